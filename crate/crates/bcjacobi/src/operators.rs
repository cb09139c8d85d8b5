//! The infinite-variable CMS operator of type BC in power-sum coordinates,
//! its degree-preserving and degree-lowering parts, the finite-N and
//! deformed operators on polynomials, and the intertwining and symmetry
//! verifications tying them together.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::params::ParamContext;
use crate::partition::Partition;
use crate::rational::{int, Rat};
use crate::symfunc::{Basis, SymFunc};

#[derive(Clone, Copy, PartialEq, Eq)]
enum OpKind {
    Full,
    APart,
    BPart,
}

/// The operator in power-sum coordinates applied to a single p-monomial.
/// Second-order terms use the product rule with the notation
/// `D_a = a d/dp_a`; p_0 is the constant from the context.
fn apply_monomial(lam: &Partition, ctx: &ParamContext, kind: OpKind) -> SymFunc {
    let k = ctx.k();
    let h = ctx.h();
    let p = ctx.p();
    let p0 = ctx.p0();
    let mut out = SymFunc::zero(Basis::PowerSum);
    let mut add = |mu: Partition, c: Rat| {
        if !c.is_zero() {
            out = out
                .add(&SymFunc::term(Basis::PowerSum, mu, c))
                .expect("same basis");
        }
    };
    let distinct: Vec<u32> = {
        let mut v: Vec<u32> = lam.parts().to_vec();
        v.dedup();
        v
    };

    // sum_{a,b>0} w(a,b) D_a D_b with w = p_{a+b} + 2 p_{a+b-1} (full),
    // p_{a+b} (A-part), 2 p_{a+b-1} (B-part); indices a+b-1 >= 1 always.
    for &a in &distinct {
        let ca = int((a as usize * lam.multiplicity(a)) as i64);
        let lam1 = lam.without_part(a).expect("part present");
        let mut distinct_b: Vec<u32> = lam1.parts().to_vec();
        distinct_b.dedup();
        for &b in &distinct_b {
            let cb = int((b as usize * lam1.multiplicity(b)) as i64);
            let lam2 = lam1.without_part(b).expect("part present");
            let f0 = &ca * &cb;
            if kind != OpKind::BPart {
                add(lam2.with_part(a + b), f0.clone());
            }
            if kind != OpKind::APart {
                add(lam2.with_part(a + b - 1), int(2) * &f0);
            }
        }
    }

    // -k sum_{a>=2} sum_{b=0}^{a-2} p_{a-b-1} (2 p_b + p_{b+1}) D_a  (full)
    // with p_{a-b-1} p_{b+1} for the A-part and 2 p_{a-b-1} p_b for the B-part.
    for &a in &distinct {
        if a < 2 {
            continue;
        }
        let base = -k * int((a as usize * lam.multiplicity(a)) as i64);
        let lam1 = lam.without_part(a).expect("part present");
        for b in 0..=a - 2 {
            let with_pa1 = lam1.with_part(a - b - 1);
            if kind != OpKind::APart {
                // 2 p_{a-b-1} p_b, where p_0 is the scalar from the context
                if b == 0 {
                    add(with_pa1.clone(), int(2) * &base * p0);
                } else {
                    add(with_pa1.with_part(b), int(2) * &base);
                }
            }
            if kind != OpKind::BPart {
                add(with_pa1.with_part(b + 1), base.clone());
            }
        }
    }

    // momentum terms
    for &a in &distinct {
        let base = int((a as usize * lam.multiplicity(a)) as i64);
        let lam1 = lam.without_part(a).expect("part present");
        if kind != OpKind::BPart {
            let coeff = int(a as i64) + k * int(a as i64 + 1) + int(2) * h;
            add(lam.clone(), coeff * &base);
        }
        if kind != OpKind::APart {
            let coeff = int(2 * a as i64 - 1) + int(2) * k * int(a as i64) + int(2) * h - p;
            if a == 1 {
                add(lam1, coeff * &base * p0);
            } else {
                add(lam1.with_part(a - 1), coeff * &base);
            }
        }
    }
    out
}

fn apply_infinite(f: &SymFunc, ctx: &ParamContext, kind: OpKind) -> SymFunc {
    let fp = f.to_power_sum();
    let mut out = SymFunc::zero(Basis::PowerSum);
    for (lam, c) in fp.terms() {
        out = out
            .add(&apply_monomial(lam, ctx, kind).scale(c))
            .expect("same basis");
    }
    match f.basis() {
        Basis::PowerSum => out,
        Basis::Monomial => out.to_monomial(),
    }
}

/// The full infinite operator. The result comes back in the basis of the
/// input.
pub fn apply_l(f: &SymFunc, ctx: &ParamContext) -> SymFunc {
    apply_infinite(f, ctx, OpKind::Full)
}

/// The weight-preserving part (the A-type CMS operator with momentum term).
pub fn apply_a(f: &SymFunc, ctx: &ParamContext) -> SymFunc {
    apply_infinite(f, ctx, OpKind::APart)
}

/// The weight-lowering part (the rational CMS operator of type BC).
pub fn apply_b(f: &SymFunc, ctx: &ParamContext) -> SymFunc {
    apply_infinite(f, ctx, OpKind::BPart)
}

/// Image of the monomial symmetric function m_nu under the full operator,
/// expressed in the monomial basis and cached per context.
pub(crate) fn apply_l_monomial(ctx: &ParamContext, nu: &Partition) -> SymFunc {
    if let Some(hit) = ctx.caches().op_l.lock().unwrap().get(nu) {
        return hit.clone();
    }
    let image = apply_l(&crate::symfunc::monomial_sym(nu), ctx);
    ctx.caches()
        .op_l
        .lock()
        .unwrap()
        .entry(nu.clone())
        .or_insert(image)
        .clone()
}

pub(crate) fn apply_a_monomial(ctx: &ParamContext, nu: &Partition) -> SymFunc {
    if let Some(hit) = ctx.caches().op_a.lock().unwrap().get(nu) {
        return hit.clone();
    }
    let image = apply_a(&crate::symfunc::monomial_sym(nu), ctx);
    ctx.caches()
        .op_a
        .lock()
        .unwrap()
        .entry(nu.clone())
        .or_insert(image)
        .clone()
}

/// Sums u_i dP/du_i over a variable block.
fn euler_sum(p: &MultiPoly, range: std::ops::Range<usize>) -> MultiPoly {
    let mut out = MultiPoly::zero(p.vars().to_vec());
    for i in range {
        out = out.add(&p.deriv(i).mul_var(i, 1)).expect("same vars");
    }
    out
}

fn deriv_sum(p: &MultiPoly, range: std::ops::Range<usize>) -> MultiPoly {
    let mut out = MultiPoly::zero(p.vars().to_vec());
    for i in range {
        out = out.add(&p.deriv(i)).expect("same vars");
    }
    out
}

/// The finite-N operator in the u coordinates. Divided differences are
/// resolved by exact division with a zero-remainder check, which doubles as
/// the symmetric-membership test for the input.
pub fn apply_finite_l(poly: &MultiPoly, k: &Rat, p: &Rat, q: &Rat) -> Result<MultiPoly> {
    let n = poly.vars().len();
    let vars = poly.vars().to_vec();
    let mut out = MultiPoly::zero(vars.clone());
    // sum u_i (u_i + 2) d_i^2
    for i in 0..n {
        let d2 = poly.deriv(i).deriv(i);
        out = out.add(&d2.mul_var(i, 2))?;
        out = out.add(&d2.mul_var(i, 1).scale(&int(2)))?;
    }
    // divided differences
    for i in 0..n {
        for j in i + 1..n {
            let g = poly
                .deriv(i)
                .mul_var(i, 1)
                .sub(&poly.deriv(j).mul_var(j, 1))?;
            let quot = g.div_exact_by_var_diff(i, j)?;
            let sym = quot.mul_var(i, 1).add(&quot.mul_var(j, 1))?;
            out = out.sub(&sym.scale(k))?;
            out = out.sub(&quot.scale(&(int(4) * k)))?;
        }
    }
    // momentum terms
    let c1 = p + int(2) * q - int(1) + k * int(n as i64 - 1);
    out = out.sub(&euler_sum(poly, 0..n).scale(&c1))?;
    let c2 = int(2) * p + int(2) * q - int(1);
    out = out.sub(&deriv_sum(poly, 0..n).scale(&c2))?;
    Ok(out)
}

/// The weight-preserving part of the finite-N operator.
pub fn apply_finite_a(poly: &MultiPoly, k: &Rat, p: &Rat, q: &Rat) -> Result<MultiPoly> {
    let n = poly.vars().len();
    let mut out = MultiPoly::zero(poly.vars().to_vec());
    for i in 0..n {
        let t = poly.deriv(i).mul_var(i, 1);
        out = out.add(&t.deriv(i).mul_var(i, 1))?;
    }
    for i in 0..n {
        for j in i + 1..n {
            let g = poly
                .deriv(i)
                .mul_var(i, 1)
                .sub(&poly.deriv(j).mul_var(j, 1))?;
            let quot = g.div_exact_by_var_diff(i, j)?;
            let sym = quot.mul_var(i, 1).add(&quot.mul_var(j, 1))?;
            out = out.sub(&sym.scale(k))?;
        }
    }
    let c1 = p + int(2) * q + k * int(n as i64 - 1);
    out = out.sub(&euler_sum(poly, 0..n).scale(&c1))?;
    Ok(out)
}

/// The degree-lowering part of the finite-N operator.
pub fn apply_finite_b(poly: &MultiPoly, k: &Rat, p: &Rat, q: &Rat) -> Result<MultiPoly> {
    let n = poly.vars().len();
    let mut out = MultiPoly::zero(poly.vars().to_vec());
    for i in 0..n {
        let d2 = poly.deriv(i).deriv(i);
        out = out.add(&d2.mul_var(i, 1).scale(&int(2)))?;
    }
    for i in 0..n {
        for j in i + 1..n {
            let g = poly
                .deriv(i)
                .mul_var(i, 1)
                .sub(&poly.deriv(j).mul_var(j, 1))?;
            let quot = g.div_exact_by_var_diff(i, j)?;
            out = out.sub(&quot.scale(&(int(4) * k)))?;
        }
    }
    let c2 = int(2) * p + int(2) * q - int(1);
    out = out.sub(&deriv_sum(poly, 0..n).scale(&c2))?;
    Ok(out)
}

/// True when the polynomial passes the finite-N admission test: every
/// divided-difference numerator divides exactly.
pub fn finite_admissible(poly: &MultiPoly) -> bool {
    let n = poly.vars().len();
    for i in 0..n {
        for j in i + 1..n {
            let g = poly
                .deriv(i)
                .mul_var(i, 1)
                .sub(&poly.deriv(j).mul_var(j, 1))
                .expect("same vars");
            if g.div_exact_by_var_diff(i, j).is_err() {
                return false;
            }
        }
    }
    true
}

/// The deformed operator on polynomials in u_1..u_m, v_1..v_n. Inputs must
/// be bisymmetric and satisfy the quasi-invariance conditions; anything else
/// is rejected rather than silently projected.
pub fn apply_deformed_l(
    poly: &MultiPoly,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<MultiPoly> {
    if poly.vars().len() != m + n {
        return Err(Error::VarMismatch(format!(
            "expected {m}+{n} variables, got {}",
            poly.vars().len()
        )));
    }
    if !poly.is_symmetric_in(0..m) || !poly.is_symmetric_in(m..m + n) {
        return Err(Error::Precondition(
            "input is not bisymmetric in (u, v)".into(),
        ));
    }
    let mut out = MultiPoly::zero(poly.vars().to_vec());
    // (u_i d_i)^2 and k (v_a d_a)^2
    for i in 0..m {
        let t = poly.deriv(i).mul_var(i, 1);
        out = out.add(&t.deriv(i).mul_var(i, 1))?;
    }
    for a in m..m + n {
        let t = poly.deriv(a).mul_var(a, 1);
        out = out.add(&t.deriv(a).mul_var(a, 1).scale(k))?;
    }
    // u-u and v-v divided differences
    for i in 0..m {
        for j in i + 1..m {
            let g = poly
                .deriv(i)
                .mul_var(i, 1)
                .sub(&poly.deriv(j).mul_var(j, 1))?;
            let quot = g.div_exact_by_var_diff(i, j)?;
            let sym = quot.mul_var(i, 1).add(&quot.mul_var(j, 1))?;
            out = out.sub(&sym.scale(k))?;
            out = out.sub(&quot.scale(&(int(4) * k)))?;
        }
    }
    for a in m..m + n {
        for b in a + 1..m + n {
            let g = poly
                .deriv(a)
                .mul_var(a, 1)
                .sub(&poly.deriv(b).mul_var(b, 1))?;
            let quot = g.div_exact_by_var_diff(a, b)?;
            let sym = quot.mul_var(a, 1).add(&quot.mul_var(b, 1))?;
            out = out.sub(&sym)?;
            out = out.sub(&quot.scale(&int(4)))?;
        }
    }
    // mixed u-v divided differences; divisibility here is exactly the
    // quasi-invariance condition on the hyperplanes u_i = v_a
    for i in 0..m {
        for a in m..m + n {
            let g = poly
                .deriv(i)
                .mul_var(i, 1)
                .sub(&poly.deriv(a).mul_var(a, 1).scale(k))?;
            let quot = g.div_exact_by_var_diff(i, a)?;
            let sym = quot.mul_var(i, 1).add(&quot.mul_var(a, 1))?;
            out = out.sub(&sym)?;
            out = out.sub(&quot.scale(&int(4)))?;
        }
    }
    // momentum terms
    let c1 = int(n as i64) + k * int(m as i64 - 1) + p + int(2) * q;
    let euler = euler_sum(poly, 0..m).add(&euler_sum(poly, m..m + n))?;
    out = out.sub(&euler.scale(&c1))?;
    let c2 = int(1) + int(2) * p + int(2) * q;
    let derivs = deriv_sum(poly, 0..m).add(&deriv_sum(poly, m..m + n))?;
    out = out.sub(&derivs.scale(&c2))?;
    // 2 sum d_i (u_i d_i) + 2k sum d_a (v_a d_a)
    for i in 0..m {
        let t = poly.deriv(i).mul_var(i, 1);
        out = out.add(&t.deriv(i).scale(&int(2)))?;
    }
    for a in m..m + n {
        let t = poly.deriv(a).mul_var(a, 1);
        out = out.add(&t.deriv(a).scale(&(int(2) * k)))?;
    }
    Ok(out)
}

/// True when the polynomial lies in the deformed algebra: bisymmetric with
/// all mixed divided differences dividing exactly.
pub fn deformed_admissible(poly: &MultiPoly, m: usize, n: usize, k: &Rat) -> bool {
    if poly.vars().len() != m + n
        || !poly.is_symmetric_in(0..m)
        || !poly.is_symmetric_in(m..m + n)
    {
        return false;
    }
    for i in 0..m {
        for a in m..m + n {
            let g = poly
                .deriv(i)
                .mul_var(i, 1)
                .sub(&poly.deriv(a).mul_var(a, 1).scale(k))
                .expect("same vars");
            if g.div_exact_by_var_diff(i, a).is_err() {
                return false;
            }
        }
    }
    true
}

/// Checks phi_N(L f) = L^(N)(phi_N f) for this context; true on the locus
/// h = -kN - p/2 - q and generically false off it.
pub fn verify_intertwine_finite(f: &SymFunc, n_vars: usize, ctx: &ParamContext) -> Result<bool> {
    let lhs = apply_l(f, ctx).expand_finite(n_vars);
    let rhs = apply_finite_l(&f.expand_finite(n_vars), ctx.k(), ctx.p(), ctx.q())?;
    Ok(lhs == rhs)
}

/// Checks phi_{m,n}(L f) = L^(m,n)(phi_{m,n} f) for this context; true on
/// the locus h = -km - n - p/2 - q.
pub fn verify_intertwine_deformed(
    f: &SymFunc,
    m: usize,
    n: usize,
    ctx: &ParamContext,
) -> Result<bool> {
    let lhs = apply_l(f, ctx).expand_deformed(m, n, ctx.k())?;
    let rhs = apply_deformed_l(
        &f.expand_deformed(m, n, ctx.k())?,
        m,
        n,
        ctx.k(),
        ctx.p(),
        ctx.q(),
    )?;
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymmetryRelation {
    /// L(k,p,q,h) = L(k,p',q',h) with p' = 1 + 2k - p - 2q, q' = q.
    PqReflection,
    /// omega . L(k,p,q,h) = k L(1/k,r,s,h^) . omega.
    OmegaDuality,
    /// theta . L(k,p,q,h) = L(k,-p,2k+1-q,h) . theta.
    ThetaShift,
}

/// Verifies one operator symmetry on every p-monomial of weight <= d.
pub fn verify_symmetry(rel: SymmetryRelation, d: usize, ctx: &ParamContext) -> Result<bool> {
    ctx.require_certified()?;
    let companion = match rel {
        SymmetryRelation::PqReflection => ctx.pq_reflected()?,
        SymmetryRelation::OmegaDuality => ctx.dual()?,
        SymmetryRelation::ThetaShift => ctx.theta_shifted()?,
    };
    for lam in Partition::all_up_to_weight(d as u32) {
        let f = crate::symfunc::power_sum_monomial(&lam);
        let ok = match rel {
            SymmetryRelation::PqReflection => apply_l(&f, ctx) == apply_l(&f, &companion),
            SymmetryRelation::OmegaDuality => {
                let lhs = apply_l(&f, ctx).omega(ctx.k())?;
                let rhs = apply_l(&f.omega(ctx.k())?, &companion).scale(ctx.k());
                lhs == rhs
            }
            SymmetryRelation::ThetaShift => {
                let lhs = apply_l(&f, ctx).theta(ctx)?;
                let rhs = apply_l(&f.theta(ctx)?, &companion);
                lhs == rhs
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::finite_vars;
    use crate::symfunc::{power_sum, power_sum_monomial};

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ctx() -> ParamContext {
        ParamContext::draw_generic(42, 6).unwrap()
    }

    #[test]
    fn constants_are_annihilated() {
        let c = ctx();
        let one = SymFunc::one(Basis::PowerSum);
        assert!(apply_l(&one, &c).is_zero());
        assert!(apply_a(&one, &c).is_zero());
        assert!(apply_b(&one, &c).is_zero());
    }

    #[test]
    fn image_of_p1_by_hand() {
        // L p_1 = (1 + 2k + 2h) p_1 + (1 + 2k + 2h - p) p_0
        let c = ctx();
        let coeff = int(1) + int(2) * c.k() + int(2) * c.h();
        let expected = power_sum(1)
            .scale(&coeff)
            .add(&SymFunc::constant(
                Basis::PowerSum,
                (&coeff - c.p()) * c.p0(),
            ))
            .unwrap();
        assert_eq!(apply_l(&power_sum(1), &c), expected);
        // split into the two parts
        assert_eq!(apply_a(&power_sum(1), &c), power_sum(1).scale(&coeff));
        assert_eq!(
            apply_b(&power_sum(1), &c),
            SymFunc::constant(Basis::PowerSum, (&coeff - c.p()) * c.p0())
        );
    }

    #[test]
    fn image_of_p2_under_b_by_hand() {
        // B p_2 = -4k p_0 p_1 + 2 (3 + 4k + 2h - p) p_1
        let c = ctx();
        let coeff = int(-4) * c.k() * c.p0() + int(2) * (int(3) + int(4) * c.k() + int(2) * c.h() - c.p());
        assert_eq!(apply_b(&power_sum(2), &c), power_sum(1).scale(&coeff));
    }

    #[test]
    fn full_operator_is_sum_of_parts() {
        let c = ctx();
        for lam in Partition::all_up_to_weight(6) {
            let f = power_sum_monomial(&lam);
            let full = apply_l(&f, &c);
            let split = apply_a(&f, &c).add(&apply_b(&f, &c)).unwrap();
            assert_eq!(full, split, "at {lam:?}");
        }
    }

    #[test]
    fn a_preserves_weight_and_b_lowers_it() {
        let c = ctx();
        for lam in Partition::all_up_to_weight(6) {
            if lam.is_empty() {
                continue;
            }
            let w = lam.weight();
            let f = power_sum_monomial(&lam);
            for (mu, _) in apply_a(&f, &c).terms() {
                assert_eq!(mu.weight(), w, "A at {lam:?}");
            }
            for (mu, _) in apply_b(&f, &c).terms() {
                assert_eq!(mu.weight(), w - 1, "B at {lam:?}");
            }
        }
    }

    #[test]
    fn finite_image_of_e1_by_hand() {
        // L^(N) e_1 = -(p + 2q - 1 + 2k(N-1)) e_1 - 2kN(N-1) - (2p + 2q - 1) N
        let c = ctx();
        let (k, p, q) = (c.k(), c.p(), c.q());
        for n in 1..=4usize {
            let vars = finite_vars(n);
            let e1 = MultiPoly::elementary(&vars, 1);
            let got = apply_finite_l(&e1, k, p, q).unwrap();
            let c1 = -(p + int(2) * q - int(1) + int(2) * k * int(n as i64 - 1));
            let c0 = -int(2) * k * int((n * (n - 1)) as i64)
                - (int(2) * p + int(2) * q - int(1)) * int(n as i64);
            let expected = e1.scale(&c1).add(&MultiPoly::constant(vars, c0)).unwrap();
            assert_eq!(got, expected, "N = {n}");
        }
    }

    #[test]
    fn finite_operator_rejects_nonsymmetric_input() {
        let c = ctx();
        let vars = finite_vars(2);
        let bad = MultiPoly::var(vars, 0);
        assert!(apply_finite_l(&bad, c.k(), c.p(), c.q()).is_err());
        assert!(!finite_admissible(&bad));
    }

    #[test]
    fn finite_a_and_b_product_rule_defects() {
        // A(p_a p_b) - A(p_a) p_b - p_a A(p_b) = 2ab p_{a+b}
        // B(p_a p_b) - B(p_a) p_b - p_a B(p_b) = 4ab p_{a+b-1}, with p_0 = N
        let c = ctx();
        let (k, p, q) = (c.k(), c.p(), c.q());
        for n in 2..=4usize {
            for a in 1..=3u32 {
                for b in 1..=3u32 {
                    let pa = power_sum(a).expand_finite(n);
                    let pb = power_sum(b).expand_finite(n);
                    let pab = power_sum_monomial(&pt(&[a.max(b), a.min(b)])).expand_finite(n);
                    let defect_a = apply_finite_a(&pab, k, p, q)
                        .unwrap()
                        .sub(&apply_finite_a(&pa, k, p, q).unwrap().mul(&pb).unwrap())
                        .unwrap()
                        .sub(&apply_finite_a(&pb, k, p, q).unwrap().mul(&pa).unwrap())
                        .unwrap();
                    let expected_a = power_sum(a + b).expand_finite(n).scale(&int((2 * a * b) as i64));
                    assert_eq!(defect_a, expected_a, "A defect a={a} b={b} N={n}");
                    let defect_b = apply_finite_b(&pab, k, p, q)
                        .unwrap()
                        .sub(&apply_finite_b(&pa, k, p, q).unwrap().mul(&pb).unwrap())
                        .unwrap()
                        .sub(&apply_finite_b(&pb, k, p, q).unwrap().mul(&pa).unwrap())
                        .unwrap();
                    let expected_b = if a + b - 1 >= 1 {
                        power_sum(a + b - 1).expand_finite(n).scale(&int((4 * a * b) as i64))
                    } else {
                        MultiPoly::constant(finite_vars(n), int((4 * a * b * n as u32) as i64))
                    };
                    assert_eq!(defect_b, expected_b, "B defect a={a} b={b} N={n}");
                }
            }
        }
    }

    #[test]
    fn deformed_operator_rejects_bad_input() {
        let c = ctx();
        let vars = crate::multipoly::deformed_vars(1, 1);
        let bad = MultiPoly::var(vars, 0); // u_1 alone fails quasi-invariance
        assert!(apply_deformed_l(&bad, 1, 1, c.k(), c.p(), c.q()).is_err());
        assert!(!deformed_admissible(&bad, 1, 1, c.k()));
    }

    #[test]
    fn intertwining_on_and_off_the_locus() {
        let base = ctx();
        let f = power_sum(2);
        let on = base.finite_locus(3).unwrap();
        assert!(verify_intertwine_finite(&f, 3, &on).unwrap());
        let off = base.with_h(on.h() + int(1)).unwrap();
        assert!(!verify_intertwine_finite(&f, 3, &off).unwrap());
        assert!(verify_intertwine_finite(&SymFunc::one(Basis::PowerSum), 3, &off).unwrap());
    }

    #[test]
    fn deformed_intertwining_examples() {
        let base = ctx();
        let f = power_sum(2);
        let ctx11 = base.deformed_locus(1, 1).unwrap();
        assert!(verify_intertwine_deformed(&f, 1, 1, &ctx11).unwrap());
        let f2 = power_sum(1).mul(&power_sum(2)).unwrap();
        let ctx21 = base.deformed_locus(2, 1).unwrap();
        assert!(verify_intertwine_deformed(&f2, 2, 1, &ctx21).unwrap());
        // n = 0 reduces to the finite case with N = m
        let ctx20 = base.deformed_locus(2, 0).unwrap();
        let lhs = apply_l(&f, &ctx20).expand_deformed(2, 0, ctx20.k()).unwrap();
        let rhs = apply_l(&f, &ctx20).expand_finite(2);
        assert_eq!(lhs.terms(), rhs.terms());
        assert!(verify_intertwine_deformed(&f, 2, 0, &ctx20).unwrap());
        assert!(verify_intertwine_finite(&f, 2, &ctx20).unwrap());
    }

    #[test]
    fn symmetries_hold_and_wrong_parameters_fail() {
        let c = ctx();
        assert!(verify_symmetry(SymmetryRelation::PqReflection, 5, &c).unwrap());
        assert!(verify_symmetry(SymmetryRelation::OmegaDuality, 5, &c).unwrap());
        assert!(verify_symmetry(SymmetryRelation::ThetaShift, 5, &c).unwrap());
        // wrong q~ (keeping q) breaks the theta shift
        let wrong = ParamContext::new(
            c.k().clone(),
            -c.p().clone(),
            c.q().clone(),
            c.h().clone(),
            c.degree_bound(),
        )
        .unwrap();
        let f = power_sum(2);
        let lhs = apply_l(&f, &c).theta(&c).unwrap();
        let rhs = apply_l(&f.theta(&c).unwrap(), &wrong);
        assert_ne!(lhs, rhs);
    }
}
