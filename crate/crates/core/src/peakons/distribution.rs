//! Piecewise-exponential functions with point masses, closed under
//! distributional differentiation.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// `amplitude * exp(rate * (x - breakpoint))`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpTerm {
    pub amplitude: f64,
    pub rate: f64,
}

/// Sums of exponential terms on each open half-line around one breakpoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothPart {
    pub breakpoint: f64,
    pub left: Vec<ExpTerm>,
    pub right: Vec<ExpTerm>,
}

fn normalize_terms(terms: &mut Vec<ExpTerm>) {
    let mut merged: Vec<ExpTerm> = Vec::with_capacity(terms.len());
    for t in terms.drain(..) {
        match merged.iter_mut().find(|m| m.rate == t.rate) {
            Some(m) => m.amplitude += t.amplitude,
            None => merged.push(t),
        }
    }
    merged.retain(|t| t.amplitude != 0.0);
    *terms = merged;
}

fn sum_terms(terms: &[ExpTerm], s: f64) -> f64 {
    terms.iter().map(|t| t.amplitude * (t.rate * s).exp()).sum()
}

impl SmoothPart {
    pub fn zero(breakpoint: f64) -> Self {
        SmoothPart { breakpoint, left: Vec::new(), right: Vec::new() }
    }

    pub fn new(breakpoint: f64, left: Vec<ExpTerm>, right: Vec<ExpTerm>) -> Self {
        let mut s = SmoothPart { breakpoint, left, right };
        normalize_terms(&mut s.left);
        normalize_terms(&mut s.right);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    /// Value off the breakpoint.
    pub fn value(&self, x: f64) -> Result<f64> {
        let s = x - self.breakpoint;
        if s < 0.0 {
            Ok(sum_terms(&self.left, s))
        } else if s > 0.0 {
            Ok(sum_terms(&self.right, s))
        } else {
            Err(Error::Singular { what: "breakpoint of piecewise function", location: x })
        }
    }

    pub fn left_limit(&self) -> f64 {
        sum_terms(&self.left, 0.0)
    }

    pub fn right_limit(&self) -> f64 {
        sum_terms(&self.right, 0.0)
    }

    /// Classical derivative on each half-line.
    pub fn derivative(&self) -> SmoothPart {
        let d = |terms: &[ExpTerm]| terms.iter().map(|t| ExpTerm { amplitude: t.amplitude * t.rate, rate: t.rate }).collect();
        SmoothPart::new(self.breakpoint, d(&self.left), d(&self.right))
    }
}

/// Point mass `coefficient * delta(x - location)` (or its derivative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub location: f64,
    pub coefficient: f64,
}

fn normalize_atoms(atoms: &mut Vec<Atom>) {
    let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
    for a in atoms.drain(..) {
        match merged.iter_mut().find(|m| m.location == a.location) {
            Some(m) => m.coefficient += a.coefficient,
            None => merged.push(a),
        }
    }
    merged.retain(|a| a.coefficient != 0.0);
    *atoms = merged;
}

/// Smooth piecewise part plus Dirac and Dirac-derivative atoms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionalFunction {
    pub smooth: SmoothPart,
    pub dirac: Vec<Atom>,
    pub dirac_derivative: Vec<Atom>,
}

/// Unit-mass Gaussian of width `eps`.
pub fn gaussian(s: f64, eps: f64) -> f64 {
    (-0.5 * (s / eps).powi(2)).exp() / (eps * (2.0 * PI).sqrt())
}

impl DistributionalFunction {
    pub fn new(smooth: SmoothPart, dirac: Vec<Atom>, dirac_derivative: Vec<Atom>) -> Result<Self> {
        if dirac.iter().chain(&dirac_derivative).any(|a| !a.location.is_finite() || !a.coefficient.is_finite()) {
            return Err(Error::domain("atom locations and coefficients must be finite"));
        }
        let mut f = DistributionalFunction { smooth, dirac, dirac_derivative };
        normalize_atoms(&mut f.dirac);
        normalize_atoms(&mut f.dirac_derivative);
        Ok(f)
    }

    pub fn from_smooth(smooth: SmoothPart) -> Self {
        DistributionalFunction { smooth, dirac: Vec::new(), dirac_derivative: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.smooth.is_zero() && self.dirac.is_empty() && self.dirac_derivative.is_empty()
    }

    /// Distributional derivative. The jump of the smooth part becomes a
    /// Dirac atom at the breakpoint and Dirac atoms become derivative atoms.
    /// Differentiating a derivative atom again is not supported.
    pub fn derivative(&self) -> Result<Self> {
        if !self.dirac_derivative.is_empty() {
            return Err(Error::Unsupported("second derivative of a Dirac atom".into()));
        }
        let jump = self.smooth.right_limit() - self.smooth.left_limit();
        let mut dirac = vec![Atom { location: self.smooth.breakpoint, coefficient: jump }];
        dirac.retain(|a| a.coefficient != 0.0);
        DistributionalFunction::new(self.smooth.derivative(), dirac, self.dirac.clone())
    }

    /// `self + scale * other`; both must share the breakpoint.
    pub fn add_scaled(&self, other: &Self, scale: f64) -> Result<Self> {
        if self.smooth.breakpoint != other.smooth.breakpoint {
            return Err(Error::usage("cannot combine functions with different breakpoints"));
        }
        let scaled = |ts: &[ExpTerm]| ts.iter().map(|t| ExpTerm { amplitude: scale * t.amplitude, rate: t.rate }).collect::<Vec<_>>();
        let atoms = |a: &[Atom], b: &[Atom]| {
            a.iter().copied().chain(b.iter().map(|x| Atom { location: x.location, coefficient: scale * x.coefficient })).collect()
        };
        let smooth = SmoothPart::new(
            self.smooth.breakpoint,
            self.smooth.left.iter().copied().chain(scaled(&other.smooth.left)).collect(),
            self.smooth.right.iter().copied().chain(scaled(&other.smooth.right)).collect(),
        );
        DistributionalFunction::new(
            smooth,
            atoms(&self.dirac, &other.dirac),
            atoms(&self.dirac_derivative, &other.dirac_derivative),
        )
    }

    /// Atom contribution to the pairing with a test function:
    /// `sum c phi(a) - sum d phi'(a)`.
    pub fn atom_pairing(&self, phi: impl Fn(f64) -> f64, dphi: impl Fn(f64) -> f64) -> f64 {
        let point: f64 = self.dirac.iter().map(|a| a.coefficient * phi(a.location)).sum();
        let dipole: f64 = self.dirac_derivative.iter().map(|a| a.coefficient * dphi(a.location)).sum();
        point - dipole
    }

    /// Regularized pointwise value: atoms replaced by Gaussians of width
    /// `eps`; the breakpoint takes the mean of the one-sided limits.
    pub fn mollified(&self, x: f64, eps: f64) -> f64 {
        let smooth = self
            .smooth
            .value(x)
            .unwrap_or_else(|_| 0.5 * (self.smooth.left_limit() + self.smooth.right_limit()));
        let point: f64 = self.dirac.iter().map(|a| a.coefficient * gaussian(x - a.location, eps)).sum();
        let dipole: f64 = self
            .dirac_derivative
            .iter()
            .map(|a| {
                let s = x - a.location;
                a.coefficient * (-s / (eps * eps)) * gaussian(s, eps)
            })
            .sum();
        smooth + point + dipole
    }
}
