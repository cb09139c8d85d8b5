//! The algebra of symmetric functions in infinitely many variables, with the
//! power-sum and monomial bases, the base change between them, the
//! automorphisms omega and theta, and the evaluation homomorphisms onto
//! finitely many ordinary or deformed variables.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve_linear;
use crate::multipoly::{deformed_vars, finite_vars, MultiPoly};
use crate::params::ParamContext;
use crate::partition::Partition;
use crate::rational::{format_rat, int, parse_rat, pow, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    PowerSum,
    Monomial,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::PowerSum => "p",
            Basis::Monomial => "m",
        }
    }
}

/// A point with ordinary coordinates u and deformed coordinates v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedPoint {
    pub u: Vec<Rat>,
    pub v: Vec<Rat>,
}

/// Element of the algebra of symmetric functions as a sparse association
/// from partitions to coefficients, tagged with its basis. Zero coefficients
/// are never stored; the empty partition carries the constant term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, Rat>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(basis: Basis, c: Rat) -> Self {
        let mut f = SymFunc::zero(basis);
        f.insert(Partition::empty(), c);
        f
    }

    pub fn one(basis: Basis) -> Self {
        SymFunc::constant(basis, int(1))
    }

    /// Single term c * b_lambda in the given basis.
    pub fn term(basis: Basis, lam: Partition, c: Rat) -> Self {
        let mut f = SymFunc::zero(basis);
        f.insert(lam, c);
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lam: &Partition) -> Rat {
        self.terms.get(lam).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Partition::empty())
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|l| l.weight()).max().unwrap_or(0)
    }

    fn insert(&mut self, lam: Partition, c: Rat) {
        if !c.is_zero() {
            self.terms.insert(lam, c);
        }
    }

    fn add_assign_term(&mut self, lam: &Partition, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(lam) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(lam);
                }
            }
            None => {
                self.terms.insert(lam.clone(), c.clone());
            }
        }
    }

    fn check_same_basis(&self, other: &SymFunc) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis.name(),
                got: other.basis.name(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SymFunc) -> Result<SymFunc> {
        self.check_same_basis(other)?;
        let mut out = self.clone();
        for (lam, c) in &other.terms {
            out.add_assign_term(lam, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymFunc) -> Result<SymFunc> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymFunc {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Rat) -> SymFunc {
        let mut out = SymFunc::zero(self.basis);
        if c.is_zero() {
            return out;
        }
        for (lam, v) in &self.terms {
            out.terms.insert(lam.clone(), v * c);
        }
        out
    }

    /// Ring product. Power sums are free generators, so the product is a
    /// partition merge there; monomial-basis products are routed through the
    /// power-sum basis.
    pub fn mul(&self, other: &SymFunc) -> Result<SymFunc> {
        self.check_same_basis(other)?;
        match self.basis {
            Basis::PowerSum => {
                let mut out = SymFunc::zero(Basis::PowerSum);
                for (a, ca) in &self.terms {
                    for (b, cb) in &other.terms {
                        let mut merged = a.clone();
                        for &part in b.parts() {
                            merged = merged.with_part(part);
                        }
                        out.add_assign_term(&merged, &(ca * cb));
                    }
                }
                Ok(out)
            }
            Basis::Monomial => {
                let prod = self.to_power_sum().mul(&other.to_power_sum())?;
                Ok(prod.to_monomial())
            }
        }
    }

    /// Exact base change to the monomial basis.
    pub fn to_monomial(&self) -> SymFunc {
        match self.basis {
            Basis::Monomial => self.clone(),
            Basis::PowerSum => {
                let mut out = SymFunc::zero(Basis::Monomial);
                for (lam, c) in &self.terms {
                    for (mu, v) in p_to_m_single(lam) {
                        out.add_assign_term(&mu, &(c * &v));
                    }
                }
                out
            }
        }
    }

    /// Exact base change to the power-sum basis.
    pub fn to_power_sum(&self) -> SymFunc {
        match self.basis {
            Basis::PowerSum => self.clone(),
            Basis::Monomial => {
                let mut out = SymFunc::zero(Basis::PowerSum);
                for (mu, c) in &self.terms {
                    let expansion = m_to_p_single(mu);
                    for (lam, v) in expansion.terms() {
                        out.add_assign_term(lam, &(c * v));
                    }
                }
                out
            }
        }
    }

    /// The automorphism omega: p_i -> k^{-1} p_i, extended multiplicatively.
    /// The result is returned in the basis of the input.
    pub fn omega(&self, k: &Rat) -> Result<SymFunc> {
        if k.is_zero() {
            return Err(Error::ZeroK);
        }
        let f = self.to_power_sum();
        let mut out = SymFunc::zero(Basis::PowerSum);
        for (lam, c) in &f.terms {
            out.add_assign_term(lam, &(c * pow(&k.clone().recip(), lam.len() as i64)));
        }
        Ok(match self.basis {
            Basis::PowerSum => out,
            Basis::Monomial => out.to_monomial(),
        })
    }

    /// The automorphism theta: p_i -> p_i + (-2)^i (2k+1-2q)/(2k).
    pub fn theta(&self, ctx: &ParamContext) -> Result<SymFunc> {
        let k = ctx.k();
        let q = ctx.q();
        if k.is_zero() {
            return Err(Error::ZeroK);
        }
        let gamma = (int(2) * k + int(1) - int(2) * q) / (int(2) * k);
        let f = self.to_power_sum();
        let mut out = SymFunc::zero(Basis::PowerSum);
        for (lam, c) in &f.terms {
            // expand prod_i (p_{lam_i} + gamma_i) over the parts
            let mut acc = SymFunc::constant(Basis::PowerSum, c.clone());
            for &part in lam.parts() {
                let gamma_i = pow(&int(-2), part as i64) * &gamma;
                let p_part = SymFunc::term(Basis::PowerSum, part_singleton(part), int(1));
                let with_p = acc.mul(&p_part)?;
                acc = with_p.add(&acc.scale(&gamma_i))?;
            }
            out = out.add(&acc)?;
        }
        Ok(match self.basis {
            Basis::PowerSum => out,
            Basis::Monomial => out.to_monomial(),
        })
    }

    /// Value of phi_N(f) at the point u, i.e. p_l -> sum u_i^l.
    pub fn eval_finite(&self, u: &[Rat]) -> Rat {
        let f = self.to_power_sum();
        let mut total = Rat::zero();
        for (lam, c) in &f.terms {
            let mut prod = c.clone();
            for &part in lam.parts() {
                let s: Rat = u.iter().map(|ui| pow(ui, part as i64)).sum();
                prod *= s;
            }
            total += prod;
        }
        total
    }

    /// Value of phi_{m,n}(f) at the point (u, v): p_a -> sum u^a + k^{-1} sum v^a.
    pub fn eval_deformed(&self, pt: &DeformedPoint, k: &Rat) -> Result<Rat> {
        if k.is_zero() {
            return Err(Error::ZeroK);
        }
        let kinv = k.clone().recip();
        let f = self.to_power_sum();
        let mut total = Rat::zero();
        for (lam, c) in &f.terms {
            let mut prod = c.clone();
            for &part in lam.parts() {
                let su: Rat = pt.u.iter().map(|x| pow(x, part as i64)).sum();
                let sv: Rat = pt.v.iter().map(|x| pow(x, part as i64)).sum();
                prod *= su + &kinv * sv;
            }
            total += prod;
        }
        Ok(total)
    }

    /// Value under the theta-twisted homomorphism phi . theta:
    /// p_a -> sum u^a + k^{-1} sum v^a + (-2)^a (2k+1-2q)/(2k).
    /// (The printed form of this map carries the shift (2q-2k-1)/(2k), which
    /// is the same constant expressed in the companion parameter 2k+1-q;
    /// composing with theta as defined is what the restriction theorems use.)
    pub fn eval_deformed_theta(&self, pt: &DeformedPoint, ctx: &ParamContext) -> Result<Rat> {
        let k = ctx.k();
        if k.is_zero() {
            return Err(Error::ZeroK);
        }
        let kinv = k.clone().recip();
        let shift = (int(2) * k + int(1) - int(2) * ctx.q()) / (int(2) * k);
        let f = self.to_power_sum();
        let mut total = Rat::zero();
        for (lam, c) in &f.terms {
            let mut prod = c.clone();
            for &part in lam.parts() {
                let su: Rat = pt.u.iter().map(|x| pow(x, part as i64)).sum();
                let sv: Rat = pt.v.iter().map(|x| pow(x, part as i64)).sum();
                prod *= su + &kinv * sv + pow(&int(-2), part as i64) * &shift;
            }
            total += prod;
        }
        Ok(total)
    }

    /// phi_N as a polynomial map: the image in u_1..u_N.
    pub fn expand_finite(&self, n: usize) -> MultiPoly {
        let vars = finite_vars(n);
        match self.basis {
            Basis::Monomial => {
                let mut out = MultiPoly::zero(vars.clone());
                for (lam, c) in &self.terms {
                    out = out
                        .add(&MultiPoly::monomial_symmetric(&vars, lam).scale(c))
                        .expect("same vars");
                }
                out
            }
            Basis::PowerSum => {
                let mut out = MultiPoly::zero(vars.clone());
                for (lam, c) in &self.terms {
                    let mut prod = MultiPoly::constant(vars.clone(), c.clone());
                    for &part in lam.parts() {
                        prod = prod
                            .mul(&MultiPoly::power_sum(&vars, 0..n, part))
                            .expect("same vars");
                    }
                    out = out.add(&prod).expect("same vars");
                }
                out
            }
        }
    }

    /// phi_{m,n} as a polynomial map: the image in u_1..u_m, v_1..v_n.
    pub fn expand_deformed(&self, m: usize, n: usize, k: &Rat) -> Result<MultiPoly> {
        self.expand_deformed_shifted(m, n, k, None)
    }

    /// The theta-twisted homomorphism as a polynomial map; see
    /// [`SymFunc::eval_deformed_theta`] for the sign convention.
    pub fn expand_deformed_theta(&self, m: usize, n: usize, ctx: &ParamContext) -> Result<MultiPoly> {
        let k = ctx.k();
        if k.is_zero() {
            return Err(Error::ZeroK);
        }
        let shift = (int(2) * k + int(1) - int(2) * ctx.q()) / (int(2) * k);
        self.expand_deformed_shifted(m, n, k, Some(&shift))
    }

    fn expand_deformed_shifted(
        &self,
        m: usize,
        n: usize,
        k: &Rat,
        shift: Option<&Rat>,
    ) -> Result<MultiPoly> {
        if k.is_zero() {
            return Err(Error::ZeroK);
        }
        let kinv = k.clone().recip();
        let vars = deformed_vars(m, n);
        let f = self.to_power_sum();
        let mut out = MultiPoly::zero(vars.clone());
        for (lam, c) in &f.terms {
            let mut prod = MultiPoly::constant(vars.clone(), c.clone());
            for &part in lam.parts() {
                let mut gen = MultiPoly::power_sum(&vars, 0..m, part);
                gen = gen.add(&MultiPoly::power_sum(&vars, m..m + n, part).scale(&kinv))?;
                if let Some(s) = shift {
                    let c0 = pow(&int(-2), part as i64) * s;
                    gen = gen.add(&MultiPoly::constant(vars.clone(), c0))?;
                }
                prod = prod.mul(&gen)?;
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let dto = SymFuncDto {
            basis: self.basis.name().to_string(),
            terms: self
                .terms
                .iter()
                .map(|(lam, c)| TermDto {
                    partition: lam.parts().to_vec(),
                    coeff: format_rat(c),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<SymFunc> {
        let dto: SymFuncDto =
            serde_json::from_str(s).map_err(|e| Error::Other(format!("bad SymFunc json: {e}")))?;
        let basis = match dto.basis.as_str() {
            "p" => Basis::PowerSum,
            "m" => Basis::Monomial,
            other => {
                return Err(Error::Other(format!("unknown basis tag {other:?}")));
            }
        };
        let mut f = SymFunc::zero(basis);
        for t in dto.terms {
            let lam = Partition::new(t.partition)?;
            f.add_assign_term(&lam, &parse_rat(&t.coeff)?);
        }
        Ok(f)
    }
}

#[derive(Serialize, Deserialize)]
struct SymFuncDto {
    basis: String,
    terms: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    partition: Vec<u32>,
    coeff: String,
}

fn part_singleton(a: u32) -> Partition {
    Partition::new(vec![a]).expect("positive part")
}

/// The power sum p_r as a SymFunc.
pub fn power_sum(r: u32) -> SymFunc {
    assert!(r > 0);
    SymFunc::term(Basis::PowerSum, part_singleton(r), int(1))
}

/// The power-sum monomial p_lambda.
pub fn power_sum_monomial(lam: &Partition) -> SymFunc {
    SymFunc::term(Basis::PowerSum, lam.clone(), int(1))
}

/// The monomial symmetric function m_lambda.
pub fn monomial_sym(lam: &Partition) -> SymFunc {
    SymFunc::term(Basis::Monomial, lam.clone(), int(1))
}

/// The elementary symmetric function E_r = m_{(1^r)}.
pub fn elementary(r: u32) -> SymFunc {
    if r == 0 {
        return SymFunc::one(Basis::Monomial);
    }
    let ones = Partition::new(vec![1; r as usize]).unwrap();
    SymFunc::term(Basis::Monomial, ones, int(1))
}

/// p_r * (m-expansion): adds r to one part (possibly a new one); the
/// coefficient of the target is the multiplicity of the grown part there.
fn mul_m_map_by_p(acc: &BTreeMap<Partition, Rat>, r: u32) -> BTreeMap<Partition, Rat> {
    let mut out: BTreeMap<Partition, Rat> = BTreeMap::new();
    for (mu, c) in acc {
        let mut sizes: Vec<u32> = vec![0];
        for &p in mu.parts() {
            if !sizes.contains(&p) {
                sizes.push(p);
            }
        }
        for a in sizes {
            let base = if a == 0 {
                Some(mu.clone())
            } else {
                mu.without_part(a)
            };
            let Some(base) = base else { continue };
            let nu = base.with_part(a + r);
            let mult = int(nu.multiplicity(a + r) as i64);
            let add = c * mult;
            match out.get_mut(&nu) {
                Some(v) => {
                    *v += add;
                    if v.is_zero() {
                        out.remove(&nu);
                    }
                }
                None => {
                    out.insert(nu, add);
                }
            }
        }
    }
    out
}

/// Monomial expansion of p_lambda, computed by iterated multiplication and
/// cached globally (it is parameter-free).
fn p_to_m_single(lam: &Partition) -> BTreeMap<Partition, Rat> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, BTreeMap<Partition, Rat>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(lam) {
        return hit.clone();
    }
    let mut acc: BTreeMap<Partition, Rat> = BTreeMap::new();
    acc.insert(Partition::empty(), int(1));
    for &part in lam.parts() {
        acc = mul_m_map_by_p(&acc, part);
    }
    cache
        .lock()
        .unwrap()
        .entry(lam.clone())
        .or_insert(acc)
        .clone()
}

/// Power-sum expansion of m_mu, by inverting the degree-|mu| block of the
/// p -> m transition matrix. Cached globally.
fn m_to_p_single(mu: &Partition) -> SymFunc {
    static CACHE: OnceLock<Mutex<HashMap<Partition, SymFunc>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(mu) {
        return hit.clone();
    }
    let w = mu.weight();
    let block = Partition::all_of_weight(w);
    let index: HashMap<&Partition, usize> = block.iter().zip(0..).collect();
    // column c of a: coefficient of m_{block[r]} in p_to_m(p_{block[c]})
    let nsize = block.len();
    let mut a = vec![vec![Rat::zero(); nsize]; nsize];
    for (c, lam) in block.iter().enumerate() {
        for (nu, v) in p_to_m_single(lam) {
            a[index[&nu]][c] = v;
        }
    }
    let mut computed: Vec<(Partition, SymFunc)> = Vec::new();
    for (r, target) in block.iter().enumerate() {
        let mut b = vec![Rat::zero(); nsize];
        b[r] = int(1);
        let sol = solve_linear(a.clone(), b).expect("p -> m block is invertible");
        let mut f = SymFunc::zero(Basis::PowerSum);
        for (c, lam) in block.iter().enumerate() {
            f.add_assign_term(lam, &sol[c]);
        }
        computed.push((target.clone(), f));
    }
    let mut guard = cache.lock().unwrap();
    for (key, val) in computed {
        guard.entry(key).or_insert(val);
    }
    guard.get(mu).expect("just inserted").clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn power_sums_multiply_freely() {
        let p1 = power_sum(1);
        let prod = p1.mul(&p1).unwrap();
        assert_eq!(prod, SymFunc::term(Basis::PowerSum, p(&[1, 1]), int(1)));
    }

    #[test]
    fn addition_with_zero_is_identity() {
        let f = power_sum(2).add(&power_sum(1).scale(&rat(3, 5))).unwrap();
        assert_eq!(f.add(&SymFunc::zero(Basis::PowerSum)).unwrap(), f);
    }

    #[test]
    fn monomial_product_m1_squared() {
        // m_(1) * m_(1) = m_(2) + 2 m_(1,1)
        let m1 = monomial_sym(&p(&[1]));
        let prod = m1.mul(&m1).unwrap();
        assert_eq!(prod.coeff(&p(&[2])), int(1));
        assert_eq!(prod.coeff(&p(&[1, 1])), int(2));
        assert_eq!(prod.terms().len(), 2);
    }

    #[test]
    fn base_change_classics() {
        // m_(1,1) = (p_1^2 - p_2) / 2
        let f = monomial_sym(&p(&[1, 1])).to_power_sum();
        assert_eq!(f.coeff(&p(&[1, 1])), rat(1, 2));
        assert_eq!(f.coeff(&p(&[2])), rat(-1, 2));
        // p_2 = m_2
        assert_eq!(power_sum(2).to_monomial(), monomial_sym(&p(&[2])));
    }

    #[test]
    fn base_change_round_trips() {
        for lam in Partition::all_up_to_weight(6) {
            let m = monomial_sym(&lam);
            assert_eq!(m.to_power_sum().to_monomial(), m, "m round trip {lam:?}");
            let ps = power_sum_monomial(&lam);
            assert_eq!(ps.to_monomial().to_power_sum(), ps, "p round trip {lam:?}");
        }
    }

    #[test]
    fn eval_finite_examples() {
        assert_eq!(power_sum(2).eval_finite(&[int(1), int(2)]), int(5));
        assert_eq!(
            monomial_sym(&p(&[1, 1])).eval_finite(&[int(2), int(3)]),
            int(6)
        );
        assert_eq!(power_sum(1).eval_finite(&[]), int(0));
    }

    #[test]
    fn eval_deformed_examples() {
        let pt = DeformedPoint {
            u: vec![int(2)],
            v: vec![int(3)],
        };
        assert_eq!(power_sum(1).eval_deformed(&pt, &rat(1, 2)).unwrap(), int(8));
        let empty = DeformedPoint { u: vec![], v: vec![] };
        let f = power_sum(1).scale(&int(3)).add(&SymFunc::constant(Basis::PowerSum, rat(5, 7))).unwrap();
        assert_eq!(f.eval_deformed(&empty, &rat(1, 2)).unwrap(), rat(5, 7));
        let pt2 = DeformedPoint {
            u: vec![int(1)],
            v: vec![int(1)],
        };
        assert_eq!(power_sum(2).eval_deformed(&pt2, &int(-1)).unwrap(), int(0));
        assert!(power_sum(1).eval_deformed(&pt2, &int(0)).is_err());
    }

    #[test]
    fn eval_finite_agrees_with_deformed_without_v() {
        let f = power_sum(2).mul(&power_sum(1)).unwrap();
        let u = vec![rat(1, 2), int(-3)];
        let pt = DeformedPoint { u: u.clone(), v: vec![] };
        assert_eq!(f.eval_finite(&u), f.eval_deformed(&pt, &rat(-3, 7)).unwrap());
    }

    #[test]
    fn expand_finite_examples() {
        let poly = power_sum(2).expand_finite(2);
        assert_eq!(poly.to_string(), "u1^2 + u2^2");
        let poly = monomial_sym(&p(&[1])).expand_finite(3);
        assert_eq!(poly.to_string(), "u1 + u2 + u3");
    }

    #[test]
    fn expand_deformed_example() {
        let k = rat(-2, 5);
        let poly = power_sum(1).expand_deformed(1, 1, &k).unwrap();
        let u1 = MultiPoly::var_by_name(&deformed_vars(1, 1), "u1").unwrap();
        let v1 = MultiPoly::var_by_name(&deformed_vars(1, 1), "v1").unwrap();
        let expected = u1.add(&v1.scale(&k.recip())).unwrap();
        assert_eq!(poly, expected);
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let err = power_sum(1).add(&monomial_sym(&p(&[1]))).unwrap_err();
        assert!(matches!(err, Error::BasisMismatch { .. }));
    }

    #[test]
    fn json_round_trip_in_canonical_order() {
        let f = monomial_sym(&p(&[2, 1]))
            .scale(&rat(-4, 7))
            .add(&monomial_sym(&p(&[3])))
            .unwrap()
            .add(&SymFunc::one(Basis::Monomial))
            .unwrap();
        let json = f.to_json();
        // canonical term order: weight ascending, reverse-lexicographic inside
        let pos_empty = json.find("[]").unwrap();
        let pos_3 = json.find("[\n        3\n      ]").unwrap_or_else(|| json.find("[3]").unwrap());
        assert!(pos_empty < pos_3);
        assert_eq!(SymFunc::from_json(&json).unwrap(), f);
    }
}
