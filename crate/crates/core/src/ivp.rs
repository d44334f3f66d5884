//! Picard iteration for `u_t = F u`, `u(0, x) = φ(x)` with time-independent
//! `F`, on polynomials in `t` truncated at order `N_t`.

use std::fmt;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::operators::{DiracOperator, EvolutionOperator};
use crate::poly::PolyField;
use crate::rational::Rational;

/// `Σ_{k ≤ N_t} c_k(x) t^k`, trailing zero coefficients pruned.
#[derive(Clone, PartialEq, Eq)]
pub struct TimeSeriesField {
    alg: Algebra,
    coeffs: Vec<PolyField>,
    order: usize,
}

impl TimeSeriesField {
    /// Coefficients beyond `order` are dropped.
    pub fn new(alg: &Algebra, coeffs: Vec<PolyField>, order: usize) -> Result<TimeSeriesField> {
        if coeffs.iter().any(|c| !c.algebra().same(alg)) {
            return Err(Error::SignatureMismatch);
        }
        let mut coeffs = coeffs;
        coeffs.truncate(order + 1);
        while coeffs.last().is_some_and(PolyField::is_zero) {
            coeffs.pop();
        }
        Ok(TimeSeriesField {
            alg: alg.clone(),
            coeffs,
            order,
        })
    }

    pub fn constant(phi: &PolyField, order: usize) -> TimeSeriesField {
        TimeSeriesField::new(phi.algebra(), vec![phi.clone()], order).expect("same algebra")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// Truncation order `N_t`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[PolyField] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the stored terms).
    pub fn coefficient(&self, k: usize) -> PolyField {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| PolyField::zero(&self.alg))
    }

    /// Value at `t = 0`.
    pub fn initial(&self) -> PolyField {
        self.coefficient(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for the zero series.
    pub fn degree_in_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Substitutes a rational time.
    pub fn at_time(&self, t: &Rational) -> PolyField {
        self.coeffs
            .iter()
            .rev()
            .fold(PolyField::zero(&self.alg), |acc, c| &acc.scale(t) + c)
    }

    pub fn to_expr_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for TimeSeriesField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl fmt::Debug for TimeSeriesField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TimeSeriesField[N_t={}]({})", self.order, self)
    }
}

/// `φ + ∫_0^t F u dτ`, keeping terms up to `t^{N_t}`.
pub fn picard_step(
    f: &EvolutionOperator,
    phi: &PolyField,
    u: &TimeSeriesField,
) -> Result<TimeSeriesField> {
    let alg = f.algebra();
    if !phi.algebra().same(alg) || !u.algebra().same(alg) {
        return Err(Error::SignatureMismatch);
    }
    let mut out = Vec::with_capacity(u.order() + 1);
    out.push(phi.clone());
    for (k, c) in u.coeffs().iter().enumerate().take(u.order()) {
        let divisor = Rational::from_integer((k as i64 + 1).into());
        out.push(f.apply(c)?.scale(&divisor.recip()));
    }
    TimeSeriesField::new(alg, out, u.order())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Truncation order; `None` means `deg φ + 4`.
    pub nt: Option<usize>,
    pub max_iter: usize,
}

impl SolveOptions {
    pub const DEFAULT_MAX_ITER: usize = 64;
    pub const NT_HEADROOM: usize = 4;

    pub fn order_for(&self, phi: &PolyField) -> usize {
        self.nt
            .unwrap_or_else(|| phi.degree().unwrap_or(0) as usize + Self::NT_HEADROOM)
    }
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            nt: None,
            max_iter: Self::DEFAULT_MAX_ITER,
        }
    }
}

/// `D` applied to every `t^k` coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogenicityTrace {
    pub residuals: Vec<PolyField>,
    pub pass: bool,
}

impl MonogenicityTrace {
    /// Lowest order with a nonzero residual.
    pub fn first_failure(&self) -> Option<usize> {
        self.residuals.iter().position(|r| !r.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveDiagnostics {
    pub iterations: usize,
    /// Two successive iterates were equal.
    pub converged: bool,
    /// The fixed point exists only because terms above `t^{N_t}` are dropped:
    /// `F` applied to the top coefficient is nonzero, so the result is a
    /// truncated Taylor approximation rather than an exact solution.
    pub truncated: bool,
    pub order: usize,
    pub residual: TimeSeriesField,
    pub monogenicity: Option<MonogenicityTrace>,
}

/// Iterates [`picard_step`] from `u_0 = φ` until two successive iterates
/// coincide or `max_iter` steps were taken. The iteration count is the index
/// of the iterate that equals its predecessor.
pub fn solve_ivp(
    f: &EvolutionOperator,
    phi: &PolyField,
    opts: &SolveOptions,
    d: Option<&DiracOperator>,
) -> Result<(TimeSeriesField, SolveDiagnostics)> {
    if !phi.algebra().same(f.algebra()) || d.is_some_and(|d| !d.algebra().same(f.algebra())) {
        return Err(Error::SignatureMismatch);
    }
    let order = opts.order_for(phi);
    let mut u = TimeSeriesField::constant(phi, order);
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        let next = picard_step(f, phi, &u)?;
        if next == u {
            converged = true;
            break;
        }
        u = next;
    }
    let truncated = converged && !f.apply(&u.coefficient(order))?.is_zero();
    let residual = time_residual(f, &u)?;
    let monogenicity = d.map(|d| monogenicity_trace(d, &u)).transpose()?;
    Ok((
        u,
        SolveDiagnostics {
            iterations,
            converged,
            truncated,
            order,
            residual,
            monogenicity,
        },
    ))
}

/// `∂_t u − F u` for the orders `0..N_t`.
pub fn time_residual(f: &EvolutionOperator, u: &TimeSeriesField) -> Result<TimeSeriesField> {
    if !u.algebra().same(f.algebra()) {
        return Err(Error::SignatureMismatch);
    }
    let out = (0..u.order())
        .map(|k| {
            let dt = u.coefficient(k + 1).scale(&Rational::from_integer((k as i64 + 1).into()));
            Ok(&dt - &f.apply(&u.coefficient(k))?)
        })
        .collect::<Result<Vec<_>>>()?;
    TimeSeriesField::new(f.algebra(), out, u.order().saturating_sub(1))
}

pub fn monogenicity_trace(d: &DiracOperator, u: &TimeSeriesField) -> Result<MonogenicityTrace> {
    if !u.algebra().same(d.algebra()) {
        return Err(Error::SignatureMismatch);
    }
    let residuals = (0..=u.order())
        .map(|k| d.apply(&u.coefficient(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonogenicityTrace {
        pass: residuals.iter().all(PolyField::is_zero),
        residuals,
    })
}
