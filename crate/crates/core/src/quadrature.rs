//! Half-line integration for imaginary-frequency integrals.
//!
//! The half line is mapped onto the unit interval with `xi = s t / (1 - t)`
//! and integrated with composite Gauss-Legendre panels. The panel count is
//! doubled until two successive estimates agree to the requested relative
//! tolerance.

use crate::error::{ensure, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub max_doublings: u32,
    /// Gauss-Legendre order of each panel.
    pub base_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            max_doublings: 16,
            base_nodes: 32,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureSpec {
            rel_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.rel_tol > 0.0 && self.rel_tol.is_finite(), || {
            format!("quadrature tolerance must be > 0, got {}", self.rel_tol)
        })?;
        ensure(self.base_nodes >= 8, || {
            format!("at least 8 base nodes required, got {}", self.base_nodes)
        })
    }
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral of `f` over `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Composite rule with `panels` equal panels over `[a, b]`.
    pub fn integrate_composite<F: Fn(f64) -> f64>(&self, a: f64, b: f64, panels: usize, f: F) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + h * k as f64;
                self.integrate(lo, lo + h, &f)
            })
            .sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integral of `f` over `[0, inf)` with the unit frequency scale.
pub fn halfline_integral<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    halfline_integral_scaled(f, 1.0, spec)
}

/// Integral of `f` over `[0, inf)`; `scale` is the value of `xi` mapped to
/// the middle of the unit interval.
pub fn halfline_integral_scaled<F: Fn(f64) -> f64>(f: F, scale: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    ensure(scale > 0.0 && scale.is_finite(), || {
        format!("scale must be > 0, got {scale}")
    })?;
    let rule = GaussLegendre::new(spec.base_nodes);
    let mapped = |t: f64| {
        let u = 1.0 - t;
        scale * f(scale * t / u) / (u * u)
    };
    let mut previous = rule.integrate(0.0, 1.0, mapped);
    let mut older = previous;
    let mut panels = 1usize;
    for doubling in 1..=spec.max_doublings {
        panels *= 2;
        let current = rule.integrate_composite(0.0, 1.0, panels, mapped);
        if !current.is_finite() {
            return Err(Error::NonConvergence {
                doublings: doubling,
                last: current,
                previous,
            });
        }
        if (current - previous).abs() <= spec.rel_tol * current.abs() || (current == 0.0 && previous == 0.0) {
            return Ok(current);
        }
        older = previous;
        previous = current;
    }
    Err(Error::NonConvergence {
        doublings: spec.max_doublings,
        last: previous,
        previous: older,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        assert_relative_eq!(rule.weights.iter().sum::<f64>(), 2.0, max_relative = 1e-15);
        // degree 15 is exact for 8 nodes
        let v = rule.integrate(-1.0, 1.0, |x| x.powi(14) + x.powi(15));
        assert_relative_eq!(v, 2.0 / 15.0, max_relative = 1e-14);
        let rule = GaussLegendre::new(7);
        assert_relative_eq!(rule.integrate(0.0, 2.0, |x| x * x), 8.0 / 3.0, max_relative = 1e-14);
        assert_eq!(rule.nodes[3], 0.0);
    }

    #[test]
    fn nodes_symmetric_and_sorted() {
        let rule = GaussLegendre::new(32);
        for i in 0..32 {
            assert_eq!(rule.nodes[i], -rule.nodes[31 - i]);
        }
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn product_lorentzian() {
        let spec = QuadratureSpec::default();
        let v = halfline_integral(|x| 1.0 / ((1.0 + x * x) * (1.0 + x * x)), &spec).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-10);
    }

    #[test]
    fn exponential_and_zero() {
        let spec = QuadratureSpec::default();
        assert!((halfline_integral(|x| (-x).exp(), &spec).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(halfline_integral(|_| 0.0, &spec).unwrap(), 0.0);
    }

    #[test]
    fn scaled_map() {
        let spec = QuadratureSpec::default();
        let v = halfline_integral_scaled(|x| 1.0 / (100.0 + x * x), 10.0, &spec).unwrap();
        assert_relative_eq!(v, PI / 20.0, max_relative = 1e-10);
    }

    #[test]
    fn non_convergence_reported() {
        let spec = QuadratureSpec {
            rel_tol: 1e-14,
            max_doublings: 2,
            base_nodes: 8,
        };
        // slowly decaying, sharp feature
        let err = halfline_integral(|x| 1.0 / (1e-6 + (x - 3.0).powi(2)), &spec).unwrap_err();
        match err {
            Error::NonConvergence {
                doublings,
                last,
                previous,
            } => {
                assert_eq!(doublings, 2);
                assert!(last != previous);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_spec_rejected() {
        let spec = QuadratureSpec {
            base_nodes: 4,
            ..Default::default()
        };
        assert!(halfline_integral(|x| (-x).exp(), &spec).is_err());
        let spec = QuadratureSpec::with_rel_tol(0.0);
        assert!(halfline_integral(|x| (-x).exp(), &spec).is_err());
    }
}
