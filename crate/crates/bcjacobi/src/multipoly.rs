//! Sparse exact multivariate polynomials in finitely many named variables,
//! with the exact division by variable differences that powers the
//! divided-difference operators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{format_rat, int, parse_rat, pow, Rat};

/// Exact multivariate polynomial; exponent vectors always have the same
/// arity as the variable list and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

/// Variable names u1..uN.
pub fn finite_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

/// Variable names u1..um, v1..vn.
pub fn deformed_vars(m: usize, n: usize) -> Vec<String> {
    let mut vars = finite_vars(m);
    vars.extend((1..=n).map(|j| format!("v{j}")));
    vars
}

/// Variable names z1..zN.
pub fn z_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: Rat) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            let e = vec![0; p.vars.len()];
            p.terms.insert(e, c);
        }
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        MultiPoly::constant(vars, int(1))
    }

    /// The variable with (0-based) index `i`.
    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(e, int(1));
        p
    }

    pub fn var_by_name(vars: &[String], name: &str) -> Option<Self> {
        let i = vars.iter().position(|v| v == name)?;
        Some(MultiPoly::var(vars.to_vec(), i))
    }

    /// sum_{i in range} x_i^r
    pub fn power_sum(vars: &[String], range: std::ops::Range<usize>, r: u32) -> Self {
        let mut p = MultiPoly::zero(vars.to_vec());
        for i in range {
            let mut e = vec![0; vars.len()];
            e[i] = r;
            p.add_term(e, int(1));
        }
        p
    }

    /// The monomial symmetric polynomial m_lambda in the given variables;
    /// zero when lambda has more parts than variables.
    pub fn monomial_symmetric(vars: &[String], lam: &Partition) -> Self {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars.to_vec());
        if lam.len() > n {
            return p;
        }
        let mut padded: Vec<u32> = lam.parts().to_vec();
        padded.resize(n, 0);
        for perm in distinct_permutations(&padded) {
            p.terms.insert(perm, int(1));
        }
        p
    }

    /// The elementary symmetric polynomial E_r.
    pub fn elementary(vars: &[String], r: usize) -> Self {
        if r == 0 {
            return MultiPoly::one(vars.to_vec());
        }
        let lam = Partition::new(vec![1; r]).unwrap();
        MultiPoly::monomial_symmetric(vars, &lam)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        let e = vec![0; self.vars.len()];
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch(format!(
                "{:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplication by x_i^p, cheap.
    pub fn mul_var(&self, i: usize, p: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[i] += p;
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// Partial derivative with respect to x_i.
    pub fn deriv(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut prod = c.clone();
            for (x, &d) in point.iter().zip(e) {
                if d > 0 {
                    prod *= pow(x, d as i64);
                }
            }
            total += prod;
        }
        total
    }

    /// Substitutes x_i := x_j.
    pub fn substitute_var(&self, i: usize, j: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[j] += e2[i];
            e2[i] = 0;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Substitutes x_i := x_i + c.
    pub fn shift_var(&self, i: usize, shift: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let d = e[i];
            // (x + shift)^d expanded binomially
            let mut binom = Rat::one();
            for t in 0..=d {
                let mut e2 = e.clone();
                e2[i] = t;
                out.add_term(e2, c * &binom * pow(shift, (d - t) as i64));
                if t < d {
                    binom = binom * int((d - t) as i64) / int((t + 1) as i64);
                }
            }
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.swap(i, j);
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Exact division by (x_i - x_j); errors with the remainder when the
    /// input is not divisible, which doubles as the symmetry membership test.
    pub fn div_exact_by_var_diff(&self, i: usize, j: usize) -> Result<MultiPoly> {
        let remainder = self.substitute_var(i, j);
        if !remainder.is_zero() {
            return Err(Error::NonzeroRemainder(
                self.vars[i].clone(),
                self.vars[j].clone(),
            ));
        }
        let mut q = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let d = e[i];
            for t in 0..d {
                let mut e2 = e.clone();
                e2[i] = t;
                e2[j] += d - 1 - t;
                q.add_term(e2, c.clone());
            }
        }
        Ok(q)
    }

    /// True when the polynomial is invariant under all permutations of the
    /// variables in `block` (checked on adjacent transpositions).
    pub fn is_symmetric_in(&self, block: std::ops::Range<usize>) -> bool {
        for i in block.start..block.end.saturating_sub(1) {
            if self.swap_vars(i, i + 1) != *self {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> String {
        let dto = MultiPolyDto {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| PolyTermDto {
                    exps: e.clone(),
                    coeff: format_rat(c),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<MultiPoly> {
        let dto: MultiPolyDto = serde_json::from_str(s)
            .map_err(|e| Error::Other(format!("bad MultiPoly json: {e}")))?;
        let mut p = MultiPoly::zero(dto.vars);
        for t in dto.terms {
            if t.exps.len() != p.vars.len() {
                return Err(Error::VarMismatch(format!(
                    "exponent arity {} vs {} variables",
                    t.exps.len(),
                    p.vars.len()
                )));
            }
            p.add_term(t.exps, parse_rat(&t.coeff)?);
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct MultiPolyDto {
    vars: Vec<String>,
    terms: Vec<PolyTermDto>,
}

#[derive(Serialize, Deserialize)]
struct PolyTermDto {
    exps: Vec<u32>,
    coeff: String,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&Vec<u32>, &Rat)> = self.terms.iter().collect();
        entries.sort_by(|a, b| b.0.cmp(a.0));
        let mut first = true;
        for (e, c) in entries {
            let mut mono = String::new();
            for (v, &d) in self.vars.iter().zip(e) {
                if d == 1 {
                    mono.push_str(&format!("{v}*"));
                } else if d > 1 {
                    mono.push_str(&format!("{v}^{d}*"));
                }
            }
            let mono = mono.trim_end_matches('*');
            let body = if mono.is_empty() {
                format_rat(c)
            } else if c.is_one() {
                mono.to_string()
            } else if *c == int(-1) {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", format_rat(c))
            };
            if first {
                write!(f, "{body}")?;
                first = false;
            } else if body.starts_with('-') {
                write!(f, " - {}", &body[1..])?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

fn distinct_permutations(values: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(values.len());
    fn go(
        counts: &mut BTreeMap<u32, usize>,
        acc: &mut Vec<u32>,
        n: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        let keys: Vec<u32> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&k, _)| k)
            .collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            acc.push(k);
            go(counts, acc, n, out);
            acc.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    go(&mut counts, &mut acc, values.len(), &mut out);
    out
}
