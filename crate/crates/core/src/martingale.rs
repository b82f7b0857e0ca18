//! Exponential bounds for martingales whose increments have a uniform
//! conditional exponential moment, plus the supporting single-variable
//! moment inequality and telescoping-decomposition utilities.
//!
//! For a martingale M_n = Σ X_i with E(e^{|X_i|} | F_{i−1}) ≤ K the moment
//! generating function satisfies E e^{±tM_n} ≤ exp(nKt²) on t ∈ [0, 1], and
//! optimizing the Chernoff exponent sup_{t∈[0,1]}(tx − Kt²) gives the tail
//! bound exp(−nx²/4K) for x ≤ 2K and exp(−n(x − K)) beyond.

use crate::error::{Error, Result};

/// The pair (n, K): number of increments and conditional exponential-moment
/// bound. K < 1 is rejected since E e^{|X|} ≥ 1 for every variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    n: usize,
    k: f64,
}

impl BoundParams {
    pub fn new(n: usize, k: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be ≥ 1".into()));
        }
        if !(k >= 1.0) {
            return Err(Error::Domain(format!(
                "K = {k} is vacuous: any variable has E e^|X| ≥ 1"
            )));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// One realization of a martingale-difference sequence X_1..X_n (or of the
/// conditional-expectation increments V_{n,1}..V_{n,n} of a decomposition).
#[derive(Debug, Clone, PartialEq)]
pub struct MartingaleSample {
    pub diffs: Vec<f64>,
}

impl MartingaleSample {
    pub fn new(diffs: Vec<f64>) -> Self {
        Self { diffs }
    }

    pub fn sum(&self) -> f64 {
        self.diffs.iter().sum()
    }
}

/// Finitely supported distribution used for exact expectation checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    atoms: Vec<(f64, f64)>,
}

impl DiscreteDistribution {
    /// Atoms are (value, probability) pairs; probabilities must be
    /// non-negative and sum to 1 within 1e−12.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Domain("distribution needs at least one atom".into()));
        }
        let mut total = 0.0;
        for &(v, p) in &atoms {
            if !v.is_finite() {
                return Err(Error::Domain(format!("non-finite atom value {v}")));
            }
            if !(p >= 0.0) {
                return Err(Error::Domain(format!("negative atom probability {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "atom probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(v, p)| v * p).sum()
    }

    /// E e^{|X|}, the constant K of the single-variable lemma.
    pub fn exp_abs_moment(&self) -> f64 {
        self.atoms.iter().map(|&(v, p)| p * v.abs().exp()).sum()
    }

    /// E e^{tX} computed exactly over the atoms.
    pub fn mgf(&self, t: f64) -> f64 {
        self.atoms.iter().map(|&(v, p)| p * (t * v).exp()).sum()
    }
}

/// sup_{t∈[0,1]} (tx − Kt²): x²/(4K) on the quadratic branch x ≤ 2K, else
/// x − K from the boundary point t = 1.
pub fn optimal_exponent(x: f64, k: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x = {x} must be > 0")));
    }
    if !(k >= 1.0) {
        return Err(Error::Domain(format!("K = {k} must be ≥ 1")));
    }
    if x <= 2.0 * k {
        Ok(x * x / (4.0 * k))
    } else {
        Ok(x - k)
    }
}

/// ln of the tail bound: −n · optimal_exponent(x, K). Reported alongside the
/// bound itself because exp(−nx²/4K) underflows for large n.
pub fn log_tail_bound(params: &BoundParams, x: f64) -> Result<f64> {
    Ok(-(params.n as f64) * optimal_exponent(x, params.k)?)
}

/// The tail bound P(±M_n/n > x) ≤ exp(−n·optimal_exponent(x, K)), in (0, 1].
pub fn tail_bound(params: &BoundParams, x: f64) -> Result<f64> {
    Ok(log_tail_bound(params, x)?.exp())
}

/// ln of the moment-generating-function bound: nKt², valid only on t ∈ [0, 1].
pub fn log_mgf_bound(params: &BoundParams, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!(
            "t = {t} outside [0, 1], where the bound is proved"
        )));
    }
    Ok(params.n as f64 * params.k * t * t)
}

/// The bound E e^{±tM_n} ≤ exp(nKt²), t ∈ [0, 1].
pub fn mgf_bound(params: &BoundParams, t: f64) -> Result<f64> {
    Ok(log_mgf_bound(params, t)?.exp())
}

/// Margin exp(Kt²) − E e^{tX} of the single-variable inequality, with
/// K = E e^{|X|} computed from the distribution itself. Requires mean ≤ 0;
/// the result is ≥ 0 for every valid input.
pub fn lemma22_margin(dist: &DiscreteDistribution, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [0, 1]")));
    }
    let mean = dist.mean();
    if mean > 1e-12 {
        return Err(Error::Precondition(format!(
            "distribution mean {mean} > 0; the inequality assumes E X ≤ 0"
        )));
    }
    let k = dist.exp_abs_moment();
    Ok((k * t * t).exp() - dist.mgf(t))
}

/// |Σ diffs − total|: residual of the telescoping identity
/// Σ_j V_{n,j} = (functional − its mean).
pub fn telescoping_check(sample: &MartingaleSample, total: f64) -> f64 {
    (sample.sum() - total).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn optimal_exponent_branches() {
        assert_eq!(optimal_exponent(1.0, 1.0).unwrap(), 0.25);
        assert_eq!(optimal_exponent(4.0, 1.0).unwrap(), 3.0);
        // Boundary x = 2K: both formulas give 1.
        let quad = 2.0 * 2.0 / 4.0;
        let lin = 2.0 - 1.0;
        assert_eq!(optimal_exponent(2.0, 1.0).unwrap(), quad);
        assert_eq!(quad, lin);
    }

    #[test]
    fn optimal_exponent_rejects_bad_domain() {
        assert!(optimal_exponent(0.0, 1.0).is_err());
        assert!(optimal_exponent(-1.0, 1.0).is_err());
        assert!(optimal_exponent(1.0, 0.5).is_err());
        assert!(optimal_exponent(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn tail_bound_values() {
        let p = BoundParams::new(100, 1.0).unwrap();
        let b = tail_bound(&p, 0.5).unwrap();
        assert!((b - (-6.25f64).exp()).abs() < 1e-18);
        let p = BoundParams::new(10, 2.0).unwrap();
        assert!((tail_bound(&p, 6.0).unwrap() - (-40.0f64).exp()).abs() < 1e-30);
    }

    #[test]
    fn tail_bound_tends_to_one_monotonically() {
        let p = BoundParams::new(1, 1.0).unwrap();
        let mut last = 0.0;
        for i in (1..60).rev() {
            let x = i as f64 / 10.0;
            let b = tail_bound(&p, x).unwrap();
            assert!(b > last, "not increasing as x decreases");
            last = b;
        }
        assert!(last < 1.0 && last > 0.99);
    }

    #[test]
    fn tail_bound_continuous_at_branch_point() {
        for k in [1.0, 1.7, 3.0] {
            let p = BoundParams::new(7, k).unwrap();
            let at = tail_bound(&p, 2.0 * k).unwrap();
            let expected = (-(7.0) * k).exp();
            assert!((at - expected).abs() <= 1e-15 * expected);
            // Approach from both sides.
            let lo = tail_bound(&p, 2.0 * k - 1e-9).unwrap();
            let hi = tail_bound(&p, 2.0 * k + 1e-9).unwrap();
            assert!((lo - at).abs() < 1e-7 && (hi - at).abs() < 1e-7);
        }
    }

    #[test]
    fn tail_bound_monotone_in_x_and_n() {
        let p = BoundParams::new(20, 1.5).unwrap();
        let mut prev = f64::INFINITY;
        for i in 1..=80 {
            let x = i as f64 * 0.1;
            let b = tail_bound(&p, x).unwrap();
            assert!(b < prev);
            prev = b;
        }
        let p_big = BoundParams::new(40, 1.5).unwrap();
        for x in [0.3, 1.0, 4.0] {
            assert!(tail_bound(&p_big, x).unwrap() <= tail_bound(&p, x).unwrap());
        }
    }

    #[test]
    fn tail_bound_equals_exp_of_exponent_on_grid() {
        // Identity on a 1000-point grid over (0, 4K].
        let p = BoundParams::new(13, 2.5).unwrap();
        for i in 1..=1000 {
            let x = 4.0 * p.k() * i as f64 / 1000.0;
            let direct = tail_bound(&p, x).unwrap();
            let via = (-(p.n() as f64) * optimal_exponent(x, p.k()).unwrap()).exp();
            let scale = direct.abs().max(1e-300);
            assert!((direct - via).abs() <= 1e-15 * scale);
        }
    }

    #[test]
    fn mgf_bound_values_and_domain() {
        let p = BoundParams::new(10, 2.0).unwrap();
        assert!((mgf_bound(&p, 0.5).unwrap() - 5.0f64.exp()).abs() < 1e-12);
        assert_eq!(mgf_bound(&p, 0.0).unwrap(), 1.0);
        let p1 = BoundParams::new(1, 1.0).unwrap();
        assert!((mgf_bound(&p1, 1.0).unwrap() - 1.0f64.exp()).abs() < 1e-15);
        assert!(mgf_bound(&p, 1.0 + 1e-12).is_err());
        assert!(mgf_bound(&p, -0.1).is_err());
    }

    #[test]
    fn lemma22_point_mass_at_zero() {
        // X ≡ 0: K = 1, margin at t = 1 is e − 1.
        let d = DiscreteDistribution::new(vec![(0.0, 1.0)]).unwrap();
        let m = lemma22_margin(&d, 1.0).unwrap();
        assert!((m - (1.0f64.exp() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn lemma22_rademacher_values() {
        let d = DiscreteDistribution::new(vec![(-1.0, 0.5), (1.0, 0.5)]).unwrap();
        assert_eq!(lemma22_margin(&d, 0.0).unwrap(), 0.0);
        // Exact atom-sum oracle: K = E e^{|X|} = e, E e^{X} = cosh 1.
        let k = 0.5 * 1.0f64.exp() + 0.5 * 1.0f64.exp();
        assert!((d.exp_abs_moment() - k).abs() < 1e-15);
        let expected = k.exp() - 1.0f64.cosh();
        let m = lemma22_margin(&d, 1.0).unwrap();
        assert!((m - expected).abs() < 1e-12);
        assert!(m > 0.0);
    }

    #[test]
    fn lemma22_rejects_positive_mean() {
        let d = DiscreteDistribution::new(vec![(1.0, 0.9), (-1.0, 0.1)]).unwrap();
        assert!(matches!(
            lemma22_margin(&d, 0.5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn discrete_distribution_validation() {
        assert!(DiscreteDistribution::new(vec![]).is_err());
        assert!(DiscreteDistribution::new(vec![(0.0, 0.5)]).is_err());
        assert!(DiscreteDistribution::new(vec![(0.0, -0.1), (1.0, 1.1)]).is_err());
    }

    #[test]
    fn telescoping_check_basics() {
        assert_eq!(
            telescoping_check(&MartingaleSample::new(vec![0.0, 0.0, 0.0]), 0.0),
            0.0
        );
        assert_eq!(
            telescoping_check(&MartingaleSample::new(vec![1.0, -1.0]), 0.0),
            0.0
        );
    }

    #[test]
    fn bound_params_validation() {
        assert!(BoundParams::new(0, 2.0).is_err());
        assert!(BoundParams::new(5, 0.99).is_err());
        assert!(BoundParams::new(5, f64::NAN).is_err());
        assert!(BoundParams::new(1, 1.0).is_ok());
    }

    proptest! {
        // Supremum dominance: the optimized exponent beats tx − Kt² on a
        // dense grid of t.
        #[test]
        fn exponent_dominates_grid(x in 1e-3f64..10.0, k in 1.0f64..5.0) {
            let opt = optimal_exponent(x, k).unwrap();
            for i in 0..=400 {
                let t = i as f64 / 400.0;
                prop_assert!(opt >= t * x - k * t * t - 1e-12);
            }
        }

        // Lemma margin is non-negative for every mean ≤ 0 distribution and
        // every t in [0, 1].
        #[test]
        fn lemma22_margin_nonnegative(
            raw in proptest::collection::vec((-3.0f64..3.0, 1e-3f64..1.0), 1..6),
            t in 0.0f64..=1.0,
        ) {
            let total: f64 = raw.iter().map(|&(_, w)| w).sum();
            let mut atoms: Vec<(f64, f64)> =
                raw.iter().map(|&(v, w)| (v, w / total)).collect();
            let mean: f64 = atoms.iter().map(|&(v, p)| v * p).sum();
            if mean > 0.0 {
                for a in &mut atoms {
                    a.0 = -a.0;
                }
            }
            // Renormalize exactly to absorb the division roundoff.
            let s: f64 = atoms.iter().map(|&(_, p)| p).sum();
            let last = atoms.len() - 1;
            atoms[last].1 += 1.0 - s;
            if atoms[last].1 < 0.0 {
                return Ok(());
            }
            let d = DiscreteDistribution::new(atoms).unwrap();
            if d.mean() > 0.0 {
                return Ok(());
            }
            prop_assert!(lemma22_margin(&d, t).unwrap() >= -1e-12);
        }
    }
}
