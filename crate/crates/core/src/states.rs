//! Example states, random ensembles and random pure-state decompositions.
//!
//! Randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`, rand_core 0.9).
//! A seed `s` and sample index `i` always map to `seed_from_u64(s)` followed by
//! `set_stream(i)`, so sample `i` is the same no matter which worker draws it
//! or in what order. Single draws use stream 0.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::qstate::{hermitian_eigen, renyi_entropy, BipartiteDims, CMatrix, CVector};
use crate::{DensityMatrix, Error, PureState, Result};

/// Eigenvalues at or below this are dropped when building decompositions.
pub const RANK_CUTOFF: f64 = 1e-12;
pub const DEFAULT_SAMPLES: usize = 2000;
/// Extra members beyond the rank in a default decomposition.
pub const DEFAULT_EXTRA_MEMBERS: usize = 2;

/// Generator for sample `index` of the run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            lo,
            hi,
        })
    }
}

/// Flip operator on `d ⊗ d`: `F|i⟩|j⟩ = |j⟩|i⟩`.
pub fn flip_operator(d: usize) -> CMatrix {
    let one = Complex64::new(1.0, 0.0);
    let mut f = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            f[(j * d + i, i * d + j)] = one;
        }
    }
    f
}

/// `ρ_f = [(d − f)I + (df − 1)F]/(d³ − d)`, the `d ⊗ d` Werner state with
/// `Tr(ρ_f F) = f`.
pub fn werner(d: usize, f: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidDims {
            m: d,
            n: d,
            reason: "Werner states need d >= 2",
        });
    }
    check_range("f", f, -1.0, 1.0)?;
    let df = d as f64;
    let n = d * d;
    let entries = (CMatrix::identity(n, n).scale(df - f) + flip_operator(d).scale(df * f - 1.0))
        .scale(1.0 / (df * df * df - df));
    DensityMatrix::new(BipartiteDims::new(d, d)?, entries)
}

/// Concurrence of the Werner state, `max(0, −f)`.
pub fn werner_concurrence(f: f64) -> f64 {
    (-f).max(0.0)
}

/// `3 ⊗ 3` state `(x/9)I + (1 − x)|ψ⟩⟨ψ|` with
/// `|ψ⟩ ∝ a|00⟩ + (|11⟩ + |22⟩)/√3`.
pub fn example2_state(a: f64, x: f64) -> Result<DensityMatrix> {
    check_range("a", a, 0.0, 1.0)?;
    check_range("x", x, 0.0, 1.0)?;
    let s = 1.0 / 3f64.sqrt();
    let norm = (a * a + 2.0 / 3.0).sqrt();
    let mut v = CVector::zeros(9);
    v[0] = Complex64::new(a / norm, 0.0);
    v[4] = Complex64::new(s / norm, 0.0);
    v[8] = Complex64::new(s / norm, 0.0);
    let entries = CMatrix::identity(9, 9).scale(x / 9.0) + (&v * v.adjoint()).scale(1.0 - x);
    DensityMatrix::new(BipartiteDims::new(3, 3)?, entries)
}

/// Rounded closed forms for the `x = 0.1` Example-2 family, as printed with
/// 2–4 digit coefficients. The printed `c2` form equals `‖R(ρ)‖ − 1` without
/// the `1/√3` prefactor; it is kept as printed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example2Rounded {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c_upper: f64,
}

pub fn example2_rounded(a: f64) -> Example2Rounded {
    let a2 = a * a;
    let q = 2.0 + 3.0 * a2;
    Example2Rounded {
        c1: 2.0 * (6.53 + 41.46 * a2 - 1.71 * a2 * a2).sqrt() / (3.0 * q),
        c2: 2.0 * (5.0 + 6.9 * a2 - 0.9 * a2 * a2 + 9.353 * a * q) / (3.0 * q * q),
        c3: (0.346 + 1.2 * a) / (0.667 + a2),
        c_upper: (6.0 * (6.38 + 33.72 * a2 + 3.42 * a2 * a2)).sqrt() / (3.0 * q),
    }
}

/// Haar-distributed pure state: normalized complex standard-normal amplitudes.
pub fn random_pure(m: usize, n: usize, seed: u64) -> Result<PureState> {
    random_pure_with(BipartiteDims::new(m, n)?, &mut sample_rng(seed, 0))
}

pub fn random_pure_with(dims: BipartiteDims, rng: &mut impl Rng) -> Result<PureState> {
    let v = CVector::from_fn(dims.total(), |_, _| complex_normal(rng));
    PureState::normalized(dims, v)
}

/// `G G†/Tr(G G†)` with `G` an `(m·n) × rank` complex Ginibre matrix.
pub fn random_density(m: usize, n: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(BipartiteDims::new(m, n)?, rank, &mut sample_rng(seed, 0))
}

pub fn random_density_with(
    dims: BipartiteDims,
    rank: usize,
    rng: &mut impl Rng,
) -> Result<DensityMatrix> {
    let d = dims.total();
    if rank == 0 || rank > d {
        return Err(Error::InvalidDims {
            m: dims.m(),
            n: dims.n(),
            reason: "rank must lie in 1..=m*n",
        });
    }
    let g = CMatrix::from_fn(d, rank, |_, _| complex_normal(rng));
    let gg = &g * g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(dims, gg.scale(1.0 / tr))
}

/// `k × r` matrix with orthonormal columns, Haar distributed: QR of a complex
/// Gaussian matrix with the phases of `R`'s diagonal moved into `Q`.
pub fn random_isometry(k: usize, r: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(k, r, |_, _| complex_normal(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let rr = qr.r();
    for j in 0..r {
        let d = rr[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..k {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Pure-state decomposition `ρ = Σ p_i |ψ_i⟩⟨ψ_i|`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub weights: Vec<f64>,
    pub members: Vec<PureState>,
}

impl Decomposition {
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.members[0].dims().total();
        let mut out = CMatrix::zeros(d, d);
        for (p, psi) in self.weights.iter().zip(&self.members) {
            let a = psi.amplitudes();
            out += (a * a.adjoint()).scale(*p);
        }
        out
    }

    /// Frobenius distance between the reconstruction and `rho`.
    pub fn residual(&self, rho: &DensityMatrix) -> f64 {
        (self.reconstruct() - rho.entries()).norm()
    }

    /// `Σ p_i H_α(μ(ψ_i))`
    pub fn average_entropy(&self, alpha: f64) -> Result<f64> {
        self.average(|psi| renyi_entropy(&psi.schmidt_vector()?, alpha))
    }

    pub fn average(&self, f: impl Fn(&PureState) -> Result<f64>) -> Result<f64> {
        let mut s = 0.0;
        for (p, psi) in self.weights.iter().zip(&self.members) {
            s += p * f(psi)?;
        }
        Ok(s)
    }
}

/// Spectral data of `ρ` reused across sampled decompositions.
#[derive(Debug, Clone)]
pub struct DecompositionSampler {
    dims: BipartiteDims,
    /// Columns `√λ_j |v_j⟩` over the support.
    scaled: CMatrix,
    k: usize,
    seed: u64,
}

impl DecompositionSampler {
    pub fn new(rho: &DensityMatrix, k: usize, seed: u64) -> Result<Self> {
        let (vals, vecs) = hermitian_eigen(rho.entries())?;
        let rank = vals.iter().filter(|&&v| v > RANK_CUTOFF).count();
        if k < rank {
            return Err(Error::DecompositionTooSmall { k, rank });
        }
        let d = rho.dims().total();
        let scaled = CMatrix::from_fn(d, rank, |r, c| vecs[(r, c)] * vals[c].sqrt());
        Ok(Self {
            dims: rho.dims(),
            scaled,
            k,
            seed,
        })
    }

    pub fn rank(&self) -> usize {
        self.scaled.ncols()
    }

    /// Decomposition number `index`: `√p_i|ψ_i⟩ = Σ_j U_ij √λ_j |v_j⟩` for a
    /// Haar isometry `U`. Members with zero weight are dropped.
    pub fn sample(&self, index: u64) -> Result<Decomposition> {
        let mut rng = sample_rng(self.seed, index);
        let u = random_isometry(self.k, self.rank(), &mut rng);
        // Row i of U·Sᵀ gives the unnormalized member i.
        let w = &u * self.scaled.transpose();
        let mut weights = Vec::with_capacity(self.k);
        let mut members = Vec::with_capacity(self.k);
        for i in 0..self.k {
            let row: Vec<Complex64> = w.row(i).iter().copied().collect();
            let p: f64 = row.iter().map(|z| z.norm_sqr()).sum();
            if p <= 0.0 {
                continue;
            }
            let s = p.sqrt();
            let v = DVector::from_iterator(row.len(), row.into_iter().map(|z| z / s));
            weights.push(p);
            members.push(PureState::normalized(self.dims, v)?);
        }
        Ok(Decomposition { weights, members })
    }

    pub fn iter(&self, samples: usize) -> impl Iterator<Item = Result<Decomposition>> + '_ {
        (0..samples as u64).map(|i| self.sample(i))
    }
}

/// `samples` random decompositions of `ρ` into `k` members.
pub fn random_decompositions(
    rho: &DensityMatrix,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<Decomposition>> {
    let sampler = DecompositionSampler::new(rho, k, seed)?;
    sampler.iter(samples).collect()
}

#[derive(Debug, Clone)]
pub struct RoofEstimate {
    /// Smallest decomposition average seen, an upper bound on `E_α(ρ)`.
    pub value: f64,
    /// Running minimum after each sample.
    pub trace: Vec<f64>,
    pub k: usize,
    pub rank: usize,
}

/// Monte-Carlo upper estimate of the convex roof `E_α(ρ)`; `k = None` uses
/// `rank + 2`. Samples run in parallel and are combined in index order.
pub fn convex_roof_upper_estimate(
    rho: &DensityMatrix,
    alpha: f64,
    k: Option<usize>,
    samples: usize,
    seed: u64,
) -> Result<RoofEstimate> {
    let probe = DecompositionSampler::new(rho, usize::MAX, seed)?;
    let rank = probe.rank();
    let k = k.unwrap_or(rank + DEFAULT_EXTRA_MEMBERS);
    let sampler = DecompositionSampler::new(rho, k, seed)?;
    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| sampler.sample(i)?.average_entropy(alpha))
        .collect::<Result<_>>()?;
    let mut trace = Vec::with_capacity(samples);
    let mut best = f64::INFINITY;
    for v in values {
        best = best.min(v);
        trace.push(best);
    }
    Ok(RoofEstimate {
        value: best,
        trace,
        k,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;
    use crate::concurrence::{concurrence_bracket, concurrence_pure};
    use crate::qstate::{max_concurrence, Tolerances};
    use crate::{evaluate_bounds, BoundsOptions, CurveMethod, HullCache};

    fn assert_valid(rho: &DensityMatrix) {
        let r = rho.validate().unwrap();
        assert!(r.is_valid(&Tolerances::default()), "{r:?}");
    }

    #[test]
    fn werner_examples() {
        let w = werner(2, 1.0).unwrap();
        let sym = (CMatrix::identity(4, 4) + flip_operator(2)).scale(1.0 / 6.0);
        assert!((w.entries() - sym).norm() < 1e-15);
        for f in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            let w = werner(3, f).unwrap();
            assert_valid(&w);
            assert!((w.entries().trace().re - 1.0).abs() < 1e-12);
            let tf = (w.entries() * flip_operator(3)).trace().re;
            assert!((tf - f).abs() < 1e-12);
        }
        // The exact value 1 sits inside the matrix-side bracket.
        let b = concurrence_bracket(&werner(3, -1.0).unwrap()).unwrap();
        assert!(b.lower <= 1.0 && 1.0 <= b.upper + 1e-12, "{b:?}");
        assert!(werner(3, 1.5).is_err());
        assert!(werner(1, 0.0).is_err());
        assert_eq!(werner_concurrence(0.5), 0.0);
        assert_eq!(werner_concurrence(-1.0), 1.0);
        assert_eq!(werner_concurrence(0.0), 0.0);
    }

    #[test]
    fn example2_examples() {
        let rho = example2_state(0.0, 0.1).unwrap();
        assert_valid(&rho);
        assert_relative_eq!(rho.purity(), 0.831111111111111, epsilon = 1e-12);
        assert_relative_eq!(rho.reduced_purities().0, 0.468333333333333, epsilon = 1e-12);
        let b = concurrence_bracket(&rho).unwrap();
        assert!((b.upper - 1.03118).abs() < 1e-5);
        assert!((b.upper - example2_rounded(0.0).c_upper).abs() < 1e-2);
        let mm = concurrence_bracket(&example2_state(0.4, 1.0).unwrap()).unwrap();
        assert!(mm.lower < 1e-12, "{mm:?}");
        assert!(example2_state(1.2, 0.1).is_err());
        assert!(example2_state(0.5, -0.1).is_err());
    }

    #[test]
    fn random_states_are_deterministic() {
        let a = random_pure(3, 4, 7).unwrap();
        assert_eq!(a, random_pure(3, 4, 7).unwrap());
        assert_ne!(a, random_pure(3, 4, 8).unwrap());
        let r = random_density(2, 3, 3, 11).unwrap();
        assert_eq!(r, random_density(2, 3, 3, 11).unwrap());
        assert_valid(&r);
        let p = random_density(3, 3, 1, 5).unwrap();
        assert_relative_eq!(p.purity(), 1.0, epsilon = 1e-12);
        assert!(random_density(2, 2, 5, 0).is_err());
    }

    #[test]
    fn random_pure_concurrence_range() {
        let dims = BipartiteDims::new(3, 3).unwrap();
        let cmax = max_concurrence(3);
        for i in 0..1000 {
            let psi = random_pure_with(dims, &mut sample_rng(1, i)).unwrap();
            let c = concurrence_pure(&psi.schmidt_vector().unwrap());
            assert!((0.0..=cmax + 1e-12).contains(&c));
        }
    }

    #[test]
    fn pure_state_decompositions_are_trivial() {
        let psi = random_pure(2, 3, 3).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        for dec in random_decompositions(&rho, 3, 20, 9).unwrap() {
            assert!(dec.residual(&rho) < 1e-9);
            for m in &dec.members {
                let overlap = (psi.amplitudes().adjoint() * m.amplitudes())[(0, 0)].norm();
                assert!((overlap - 1.0).abs() < 1e-9);
            }
        }
        let h = renyi_entropy(&psi.schmidt_vector().unwrap(), 3.0).unwrap();
        let est = convex_roof_upper_estimate(&rho, 3.0, None, 50, 1).unwrap();
        assert_relative_eq!(est.value, h, epsilon = 1e-9);
    }

    #[test]
    fn qubit_identity_decomposition() {
        let dims = BipartiteDims::new(1, 2).unwrap();
        let rho = DensityMatrix::maximally_mixed(dims);
        for dec in random_decompositions(&rho, 2, 50, 4).unwrap() {
            assert!(dec.residual(&rho) < 1e-9);
            assert_eq!(dec.members.len(), 2);
            assert_relative_eq!(dec.weights[0], 0.5, epsilon = 1e-9);
            assert_relative_eq!(dec.weights[1], 0.5, epsilon = 1e-9);
            let ip = (dec.members[0].amplitudes().adjoint() * dec.members[1].amplitudes())[(0, 0)];
            assert!(ip.norm() < 1e-9);
        }
        assert!(matches!(
            random_decompositions(&rho, 1, 1, 0),
            Err(Error::DecompositionTooSmall { k: 1, rank: 2 })
        ));
    }

    #[test]
    fn werner_decompositions_reconstruct() {
        let rho = werner(3, -0.5).unwrap();
        let sampler = DecompositionSampler::new(&rho, 9, 42).unwrap();
        assert_eq!(sampler.rank(), 9);
        let worst = (0..2000u64)
            .into_par_iter()
            .map(|i| sampler.sample(i).unwrap().residual(&rho))
            .reduce(|| 0.0, f64::max);
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn product_mixture_roof_vanishes() {
        let dims = BipartiteDims::new(2, 2).unwrap();
        let mut e = CMatrix::zeros(4, 4);
        e[(0, 0)] = Complex64::new(0.5, 0.0);
        e[(3, 3)] = Complex64::new(0.5, 0.0);
        let rho = DensityMatrix::new(dims, e).unwrap();
        // Decompositions into exactly rank members; larger ones rarely land
        // near the product decomposition.
        for alpha in [1.0, 3.0] {
            let est = convex_roof_upper_estimate(&rho, alpha, Some(2), 5000, 17).unwrap();
            assert!(est.value <= 0.05, "α={alpha}: {}", est.value);
        }
    }

    #[test]
    fn werner_roof_lies_between_bounds() {
        let rho = werner(3, -0.5).unwrap();
        let est = convex_roof_upper_estimate(&rho, 3.0, None, DEFAULT_SAMPLES, 2).unwrap();
        assert_eq!(est.k, 11);
        let mut cache = HullCache::new();
        let (lo, up) = crate::bounds_from_concurrence(
            0.5,
            0.5,
            3.0,
            3,
            CurveMethod::Paper,
            crate::hull::DEFAULT_GRID,
            &mut cache,
        )
        .unwrap();
        assert!(lo <= est.value, "{lo} {}", est.value);
        // The sampled roof is a loose upper estimate; only the lower side is certified.
        assert!(lo < up);
        let r = evaluate_bounds(&rho, 3.0, &BoundsOptions::default(), &mut cache).unwrap();
        assert!(r.e_low <= est.value);
        assert!(est.trace.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*est.trace.last().unwrap(), est.value);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn decompositions_reconstruct(seed in any::<u64>(), rank in 1usize..=6, extra in 0usize..3) {
            let rho = random_density(2, 3, rank, seed).unwrap();
            let decs = random_decompositions(&rho, rank + extra, 5, seed ^ 1).unwrap();
            for dec in decs {
                prop_assert!(dec.residual(&rho) < 1e-9);
                let total: f64 = dec.weights.iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-9);
                prop_assert!(dec.weights.iter().all(|&p| p > 0.0));
            }
        }

        #[test]
        fn roof_estimate_dominates_lower_bound(seed in any::<u64>(), alpha in prop::sample::select(vec![0.6, 1.0, 3.0])) {
            let rho = random_density(2, 3, 2, seed).unwrap();
            let est = convex_roof_upper_estimate(&rho, alpha, None, 200, seed).unwrap();
            let mut cache = HullCache::new();
            let opts = BoundsOptions { grid_size: crate::hull::MIN_GRID, ..Default::default() };
            let r = evaluate_bounds(&rho, alpha, &opts, &mut cache).unwrap();
            prop_assert!(r.e_low <= est.value + 1e-9, "{} {}", r.e_low, est.value);
            prop_assert!(est.trace.windows(2).all(|w| w[1] <= w[0]));
        }

        #[test]
        fn factory_states_validate(d in 2usize..5, f in -1.0f64..=1.0, a in 0.0f64..=1.0, x in 0.0f64..=1.0) {
            prop_assert!(werner(d, f).unwrap().validate().unwrap().is_valid(&Tolerances::default()));
            prop_assert!(example2_state(a, x).unwrap().validate().unwrap().is_valid(&Tolerances::default()));
        }
    }
}
