//! Problem configuration: a JSON document validated in one pass.
//!
//! ```json
//! {
//!   "signature": { "n": 2, "alpha": ["1", "1"], "gamma": [{ "i": 1, "j": 2, "value": "0" }] },
//!   "dirac": { "lambda": ["1", "1", "1"] },
//!   "evolution": { "A": ["e12", "e2", "-e1"], "algebra_valued": true },
//!   "initial": "x1 - e1*x0",
//!   "solver": { "nt": 6, "max_iter": 64, "degree": 4 },
//!   "ansatz": { "degree": 1, "homogeneous": true, "algebra_valued": true }
//! }
//! ```
//!
//! Only `signature` is mandatory; each command states which other blocks it
//! needs. Every problem found is reported with its JSON path.

use std::fmt;
use std::path::Path;

use cliffivp_core::rational::parse_rational;
use cliffivp_core::{
    parse_expr, Algebra, AlgebraSignature, Ansatz, DiracOperator, EvolutionOperator, PolyField,
    Rational,
};
use serde_json::{Map, Value};

pub const DEFAULT_DEGREE: u32 = 4;
pub const DEFAULT_MAX_ITER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ConfigError {
    pub issues: Vec<Issue>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.issues.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverSection {
    pub nt: Option<usize>,
    pub max_iter: usize,
    pub degree: u32,
}

impl Default for SolverSection {
    fn default() -> Self {
        SolverSection {
            nt: None,
            max_iter: DEFAULT_MAX_ITER,
            degree: DEFAULT_DEGREE,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProblemConfig {
    pub algebra: Algebra,
    pub dirac: Option<DiracOperator>,
    pub evolution: Option<EvolutionOperator>,
    pub initial: Option<PolyField>,
    pub solver: SolverSection,
    pub ansatz: Option<Ansatz>,
}

pub fn load_config(path: &Path) -> Result<ProblemConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| single("$", format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<ProblemConfig, ConfigError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| single("$", format!("malformed JSON at line {} column {}: {e}", e.line(), e.column())))?;
    let mut v = Validator::default();
    let config = v.config(&value);
    match config {
        Some(c) if v.issues.is_empty() => Ok(c),
        _ => Err(ConfigError { issues: v.issues }),
    }
}

fn single(path: &str, message: String) -> ConfigError {
    ConfigError {
        issues: vec![Issue {
            path: path.into(),
            message,
        }],
    }
}

#[derive(Default)]
struct Validator {
    issues: Vec<Issue>,
}

impl Validator {
    fn issue(&mut self, path: &str, message: impl Into<String>) {
        self.issues.push(Issue {
            path: path.into(),
            message: message.into(),
        });
    }

    fn object<'a>(&mut self, value: &'a Value, path: &str, known: &[&str]) -> Option<&'a Map<String, Value>> {
        let Some(map) = value.as_object() else {
            self.issue(path, "expected an object");
            return None;
        };
        for key in map.keys() {
            if !known.contains(&key.as_str()) {
                self.issue(&format!("{path}.{key}"), "unknown key");
            }
        }
        Some(map)
    }

    fn required<'a>(&mut self, map: &'a Map<String, Value>, path: &str, key: &str) -> Option<&'a Value> {
        let v = map.get(key);
        if v.is_none() {
            self.issue(&format!("{path}.{key}"), "missing key");
        }
        v
    }

    fn uint(&mut self, value: &Value, path: &str) -> Option<u64> {
        let v = value.as_u64();
        if v.is_none() {
            self.issue(path, "expected a non-negative integer");
        }
        v
    }

    fn boolean(&mut self, value: &Value, path: &str) -> Option<bool> {
        let v = value.as_bool();
        if v.is_none() {
            self.issue(path, "expected true or false");
        }
        v
    }

    fn string<'a>(&mut self, value: &'a Value, path: &str) -> Option<&'a str> {
        let v = value.as_str();
        if v.is_none() {
            self.issue(path, "expected a string");
        }
        v
    }

    fn rational(&mut self, value: &Value, path: &str) -> Option<Rational> {
        let text = self.string(value, path)?;
        let r = parse_rational(text);
        if r.is_none() {
            self.issue(path, format!("expected a rational \"p\" or \"p/q\", got {text:?}"));
        }
        r
    }

    fn list<'a>(&mut self, value: &'a Value, path: &str, expected: Option<usize>) -> Option<&'a Vec<Value>> {
        let Some(items) = value.as_array() else {
            self.issue(path, "expected a list");
            return None;
        };
        if let Some(n) = expected {
            if items.len() != n {
                self.issue(path, format!("expected {n} entries, got {}", items.len()));
                return None;
            }
        }
        Some(items)
    }

    fn expr(&mut self, value: &Value, path: &str, alg: &Algebra) -> Option<PolyField> {
        let text = self.string(value, path)?;
        match parse_expr(text, alg) {
            Ok(f) => Some(f),
            Err(e) => {
                self.issue(path, format!("{e}"));
                None
            }
        }
    }

    fn exprs(&mut self, value: &Value, path: &str, alg: &Algebra, count: usize) -> Option<Vec<PolyField>> {
        let items = self.list(value, path, Some(count))?;
        let parsed: Vec<Option<PolyField>> = items
            .iter()
            .enumerate()
            .map(|(k, item)| self.expr(item, &format!("{path}[{k}]"), alg))
            .collect();
        parsed.into_iter().collect()
    }

    fn config(&mut self, value: &Value) -> Option<ProblemConfig> {
        let root = self.object(
            value,
            "$",
            &["signature", "dirac", "evolution", "initial", "solver", "ansatz"],
        )?;
        let solver = root.get("solver").map_or(Some(SolverSection::default()), |s| self.solver(s));
        let ansatz = root.get("ansatz").map(|a| self.ansatz(a));
        let alg = self
            .required(root, "$", "signature")
            .and_then(|s| self.signature(s))
            .map(Algebra::new);
        let Some(alg) = alg else {
            // Expressions cannot be checked without the algebra.
            return None;
        };
        let dirac = root.get("dirac").map(|d| self.dirac(d, &alg));
        let evolution = root.get("evolution").map(|e| self.evolution(e, &alg));
        let initial = root.get("initial").map(|i| self.expr(i, "$.initial", &alg));
        Some(ProblemConfig {
            dirac: dirac.flatten(),
            evolution: evolution.flatten(),
            initial: initial.flatten(),
            solver: solver?,
            ansatz: ansatz.flatten(),
            algebra: alg,
        })
    }

    fn signature(&mut self, value: &Value) -> Option<AlgebraSignature> {
        let path = "$.signature";
        let map = self.object(value, path, &["n", "alpha", "gamma"])?;
        let n = self.required(map, path, "n").and_then(|v| self.uint(v, "$.signature.n"));
        let n = match n {
            Some(n) if (1..=cliffivp_core::algebra::MAX_GENERATORS as u64).contains(&n) => n as usize,
            Some(n) => {
                self.issue(
                    "$.signature.n",
                    format!("expected 1..={} generators, got {n}", cliffivp_core::algebra::MAX_GENERATORS),
                );
                return None;
            }
            None => return None,
        };
        let alpha: Option<Vec<Rational>> = self
            .required(map, path, "alpha")
            .and_then(|v| self.list(v, "$.signature.alpha", Some(n)))
            .and_then(|items| {
                let parsed: Vec<Option<Rational>> = items
                    .iter()
                    .enumerate()
                    .map(|(k, a)| self.rational(a, &format!("$.signature.alpha[{k}]")))
                    .collect();
                parsed.into_iter().collect()
            });
        let mut gamma = Vec::new();
        let mut gamma_ok = true;
        if let Some(list) = map.get("gamma").and_then(|g| self.list(g, "$.signature.gamma", None)) {
            for (k, entry) in list.iter().enumerate() {
                let p = format!("$.signature.gamma[{k}]");
                match self.gamma_entry(entry, &p, n) {
                    Some(e) => gamma.push(e),
                    None => gamma_ok = false,
                }
            }
        }
        let alpha = alpha?;
        if !gamma_ok {
            return None;
        }
        match AlgebraSignature::new(alpha, &gamma) {
            Ok(sig) => Some(sig),
            Err(e) => {
                self.issue(path, e.to_string());
                None
            }
        }
    }

    fn gamma_entry(&mut self, value: &Value, path: &str, n: usize) -> Option<(usize, usize, Rational)> {
        let map = self.object(value, path, &["i", "j", "value"])?;
        let index = |v: &mut Validator, key: &str| {
            let p = format!("{path}.{key}");
            let raw = v.required(map, path, key).and_then(|x| v.uint(x, &p))?;
            if raw == 0 || raw as usize > n {
                v.issue(&p, format!("generator index must be in 1..={n}, got {raw}"));
                return None;
            }
            Some(raw as usize)
        };
        let i = index(self, "i");
        let j = index(self, "j");
        let value = self
            .required(map, path, "value")
            .and_then(|x| self.rational(x, &format!("{path}.value")));
        let (i, j, value) = (i?, j?, value?);
        if i == j {
            self.issue(path, format!("gamma is only defined for i != j, got ({i}, {j})"));
            return None;
        }
        Some((i, j, value))
    }

    fn dirac(&mut self, value: &Value, alg: &Algebra) -> Option<DiracOperator> {
        let path = "$.dirac";
        let map = self.object(value, path, &["lambda"])?;
        let lambda = self
            .required(map, path, "lambda")
            .and_then(|v| self.exprs(v, "$.dirac.lambda", alg, alg.n() + 1))?;
        match DiracOperator::new(alg, lambda) {
            Ok(d) => Some(d),
            Err(e) => {
                self.issue("$.dirac.lambda", e.to_string());
                None
            }
        }
    }

    fn evolution(&mut self, value: &Value, alg: &Algebra) -> Option<EvolutionOperator> {
        let path = "$.evolution";
        let map = self.object(value, path, &["A", "algebra_valued"])?;
        let a = self
            .required(map, path, "A")
            .and_then(|v| self.exprs(v, "$.evolution.A", alg, alg.n() + 1));
        let algebra_valued = map
            .get("algebra_valued")
            .map(|v| self.boolean(v, "$.evolution.algebra_valued"));
        let a = a?;
        let result = match algebra_valued {
            Some(flag) => EvolutionOperator::with_flag(alg, a, !flag?),
            None => EvolutionOperator::new(alg, a),
        };
        match result {
            Ok(f) => Some(f),
            Err(e) => {
                self.issue("$.evolution", e.to_string());
                None
            }
        }
    }

    fn solver(&mut self, value: &Value) -> Option<SolverSection> {
        let path = "$.solver";
        let map = self.object(value, path, &["nt", "max_iter", "degree"])?;
        let mut out = SolverSection::default();
        let mut ok = true;
        if let Some(v) = map.get("nt") {
            match self.uint(v, "$.solver.nt") {
                Some(x) => out.nt = Some(x as usize),
                None => ok = false,
            }
        }
        if let Some(v) = map.get("max_iter") {
            match self.uint(v, "$.solver.max_iter") {
                Some(0) => {
                    self.issue("$.solver.max_iter", "must be at least 1");
                    ok = false;
                }
                Some(x) => out.max_iter = x as usize,
                None => ok = false,
            }
        }
        if let Some(v) = map.get("degree") {
            match self.uint(v, "$.solver.degree") {
                Some(x) if x <= u32::MAX as u64 => out.degree = x as u32,
                Some(_) => {
                    self.issue("$.solver.degree", "degree too large");
                    ok = false;
                }
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn ansatz(&mut self, value: &Value) -> Option<Ansatz> {
        let path = "$.ansatz";
        let map = self.object(value, path, &["degree", "homogeneous", "algebra_valued"])?;
        let degree = self
            .required(map, path, "degree")
            .and_then(|v| self.uint(v, "$.ansatz.degree"));
        let homogeneous = map
            .get("homogeneous")
            .map_or(Some(true), |v| self.boolean(v, "$.ansatz.homogeneous"));
        let algebra_valued = map
            .get("algebra_valued")
            .map_or(Some(false), |v| self.boolean(v, "$.ansatz.algebra_valued"));
        let degree = degree?;
        if degree > Ansatz::MAX_DEGREE as u64 {
            self.issue(
                "$.ansatz.degree",
                format!("ansatz degree must be at most {}, got {degree}", Ansatz::MAX_DEGREE),
            );
            return None;
        }
        Some(Ansatz {
            degree: degree as u32,
            homogeneous: homogeneous?,
            algebra_valued: algebra_valued?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "signature": { "n": 1, "alpha": ["1"] },
        "dirac": { "lambda": ["1", "1"] }
    }"#;

    fn paths(err: ConfigError) -> Vec<String> {
        err.issues.into_iter().map(|i| i.path).collect()
    }

    #[test]
    fn minimal_config_loads() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.algebra.n(), 1);
        assert!(c.dirac.is_some());
        assert!(c.evolution.is_none());
        assert_eq!(c.solver, SolverSection::default());
    }

    #[test]
    fn diagonal_gamma_rejected() {
        let err = parse_config(
            r#"{ "signature": { "n": 2, "alpha": ["1", "1"], "gamma": [{ "i": 1, "j": 1, "value": "1" }] } }"#,
        )
        .unwrap_err();
        assert_eq!(paths(err.clone()), vec!["$.signature.gamma[0]"]);
        assert!(err.to_string().contains("i != j"));
    }

    #[test]
    fn wrong_lambda_length_reports_counts() {
        let err = parse_config(r#"{ "signature": { "n": 1, "alpha": ["1"] }, "dirac": { "lambda": ["1"] } }"#)
            .unwrap_err();
        assert_eq!(err.issues.len(), 1);
        assert_eq!(err.issues[0].path, "$.dirac.lambda");
        assert_eq!(err.issues[0].message, "expected 2 entries, got 1");
    }

    #[test]
    fn issues_are_collected_together() {
        let err = parse_config(
            r#"{
                "signature": { "n": 2, "alpha": ["1", "x"] },
                "solver": { "nt": -1 },
                "extra": 3
            }"#,
        )
        .unwrap_err();
        let p = paths(err);
        assert!(p.contains(&"$.extra".to_string()));
        assert!(p.contains(&"$.solver.nt".to_string()));
        assert!(p.contains(&"$.signature.alpha[1]".to_string()));
    }

    #[test]
    fn expression_errors_carry_paths() {
        let err = parse_config(
            r#"{
                "signature": { "n": 2, "alpha": ["1", "1"] },
                "dirac": { "lambda": ["1", "e11", "1"] },
                "evolution": { "A": ["1", "x3", "0"] },
                "initial": "x1 +"
            }"#,
        )
        .unwrap_err();
        assert_eq!(
            paths(err),
            vec!["$.dirac.lambda[1]", "$.evolution.A[1]", "$.initial"]
        );
    }

    #[test]
    fn real_flag_is_validated() {
        let err = parse_config(
            r#"{
                "signature": { "n": 1, "alpha": ["1"] },
                "evolution": { "A": ["e1", "0"], "algebra_valued": false }
            }"#,
        )
        .unwrap_err();
        assert_eq!(paths(err), vec!["$.evolution"]);
    }

    #[test]
    fn malformed_json() {
        let err = parse_config("{ \"signature\": ").unwrap_err();
        assert_eq!(paths(err), vec!["$"]);
        let err = parse_config("{}").unwrap_err();
        assert_eq!(paths(err), vec!["$.signature"]);
    }
}
