//! Machine-readable reports. Keys are emitted in struct declaration order, so
//! identical inputs give byte-identical documents. Rationals are `"p/q"`
//! strings (`"p"` for integers), blades are digit strings (`"0"` for the
//! unit), monomials are exponent vectors over `x0..xn`.

use cliffivp_core::{
    AlgebraSignature, Ansatz, ConditionReport, EllipticityVerdict, EvolutionOperator, Multivector,
    PolyField, RatMatrix, Rational, TimeSeriesField,
};
use serde::Serialize;

pub fn rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Serialize)]
pub struct Document<T: Serialize> {
    pub command: &'static str,
    pub status: &'static str,
    pub signature: SignatureReport,
    pub result: T,
}

#[derive(Serialize)]
pub struct SignatureReport {
    pub n: usize,
    pub alpha: Vec<String>,
    pub gamma: Vec<GammaReport>,
}

#[derive(Serialize)]
pub struct GammaReport {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

impl SignatureReport {
    pub fn new(sig: &AlgebraSignature) -> SignatureReport {
        let n = sig.n();
        let mut gamma = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let g = sig.gamma(i, j);
                if !is_zero(g) {
                    gamma.push(GammaReport { i, j, value: rational(g) });
                }
            }
        }
        SignatureReport {
            n,
            alpha: sig.alphas().iter().map(rational).collect(),
            gamma,
        }
    }
}

fn is_zero(r: &Rational) -> bool {
    *r.numer() == 0.into()
}

#[derive(Serialize)]
pub struct TermReport {
    pub monomial: Vec<u32>,
    pub blade: String,
    pub coeff: String,
}

#[derive(Serialize)]
pub struct FieldReport {
    pub expr: String,
    pub terms: Vec<TermReport>,
}

impl FieldReport {
    pub fn new(u: &PolyField) -> FieldReport {
        FieldReport {
            expr: u.to_expr_string(),
            terms: u
                .coordinates()
                .map(|(m, b, v)| TermReport {
                    monomial: m.exponents().to_vec(),
                    blade: b.digits(),
                    coeff: rational(v),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct BladeCoeff {
    pub blade: String,
    pub coeff: String,
}

pub fn multivector(m: &Multivector) -> Vec<BladeCoeff> {
    m.terms()
        .map(|(b, v)| BladeCoeff {
            blade: b.digits(),
            coeff: rational(v),
        })
        .collect()
}

#[derive(Serialize)]
pub struct TableEntry {
    pub left: String,
    pub right: String,
    pub product: Vec<BladeCoeff>,
}

#[derive(Serialize)]
pub struct TableReport {
    pub dimension: usize,
    pub blades: Vec<String>,
    pub products: Vec<TableEntry>,
}

#[derive(Serialize)]
pub struct MonogenicReport {
    pub field: FieldReport,
    pub residual: FieldReport,
    pub monogenic: bool,
}

#[derive(Serialize)]
pub struct BasisReport {
    pub degree: u32,
    pub dimension: usize,
    pub basis: Vec<FieldReport>,
}

#[derive(Serialize)]
pub struct EntryReport {
    pub label: String,
    pub pass: bool,
    pub residual: FieldReport,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub case: &'static str,
    pub pass: bool,
    pub entries: Vec<EntryReport>,
}

impl CheckReport {
    pub fn new(r: &ConditionReport) -> CheckReport {
        CheckReport {
            case: r.case.tag(),
            pass: r.pass,
            entries: r
                .entries
                .iter()
                .map(|e| EntryReport {
                    label: e.label.clone(),
                    pass: e.pass,
                    residual: FieldReport::new(&e.residual),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct WitnessReport {
    pub u: FieldReport,
    pub image: FieldReport,
}

#[derive(Serialize)]
pub struct OracleReportOut {
    pub degree: u32,
    pub checked: usize,
    pub pass: bool,
    pub witness: Option<WitnessReport>,
}

#[derive(Serialize)]
pub struct AnsatzReport {
    pub degree: u32,
    pub homogeneous: bool,
    pub algebra_valued: bool,
}

impl AnsatzReport {
    pub fn new(a: &Ansatz) -> AnsatzReport {
        AnsatzReport {
            degree: a.degree,
            homogeneous: a.homogeneous,
            algebra_valued: a.algebra_valued,
        }
    }
}

#[derive(Serialize)]
pub struct OperatorReport {
    pub coefficients: Vec<FieldReport>,
    pub oracle_pass: bool,
}

pub fn operator_fields(f: &EvolutionOperator) -> Vec<FieldReport> {
    f.coefficients().iter().map(FieldReport::new).collect()
}

/// Nonzero entries as `[row, column, value]`.
#[derive(Serialize)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl SparseMatrix {
    pub fn new(m: &RatMatrix) -> SparseMatrix {
        let mut entries = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                if !is_zero(v) {
                    entries.push((r, c, rational(v)));
                }
            }
        }
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }
}

#[derive(Serialize)]
pub struct EnumerateReport {
    pub case: &'static str,
    pub ansatz: AnsatzReport,
    pub unknowns: usize,
    pub rank: usize,
    pub dimension: usize,
    pub oracle_degree: u32,
    pub operators: Vec<OperatorReport>,
    pub condition_matrix: SparseMatrix,
}

#[derive(Serialize)]
pub struct EllipticReport {
    pub symbol: Vec<Vec<String>>,
    pub definite: bool,
    pub c1_satisfied: bool,
    pub c2_applicable_and_satisfied: bool,
}

impl EllipticReport {
    pub fn new(v: &EllipticityVerdict) -> EllipticReport {
        EllipticReport {
            symbol: (0..v.symbol.rows())
                .map(|r| v.symbol.row(r).iter().map(rational).collect())
                .collect(),
            definite: v.definite,
            c1_satisfied: v.c1_satisfied,
            c2_applicable_and_satisfied: v.c2_applicable_and_satisfied,
        }
    }
}

pub fn series(u: &TimeSeriesField) -> Vec<FieldReport> {
    u.coeffs().iter().map(FieldReport::new).collect()
}

#[derive(Serialize)]
pub struct TraceReport {
    pub pass: bool,
    pub first_failure: Option<usize>,
    pub residuals: Vec<FieldReport>,
}

#[derive(Serialize)]
pub struct SolveReport {
    pub nt: usize,
    pub max_iter: usize,
    pub iterations: usize,
    pub converged: bool,
    pub truncated: bool,
    pub initial: FieldReport,
    /// Coefficient of `t^k` at index `k`.
    pub solution: Vec<FieldReport>,
    pub residual: Vec<FieldReport>,
    pub monogenicity: Option<TraceReport>,
}
