//! Pieri rules: van Diejen's finite-N rule for general r, the three printed
//! forms of the r = 1 coefficient in infinitely many variables, rational
//! reconstruction of the h-dependence of finite-N coefficients, and the
//! classification of invariant ideals by rectangle containment.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::eigen::{
    bc_roots_all, jacobi, jacobi_zero_closed, jack_with_k, lambda_minus_rho,
    upsilon_bc,
};
use crate::error::{Error, Result};
use crate::gamma::nonzero;
use crate::linalg::solve_linear;
use crate::params::ParamContext;
use crate::partition::{box_content, ContentKind, Partition};
use crate::rational::{int, pow, rat, Rat};
use crate::symfunc::{monomial_sym, SymFunc};

/// w(x) = (x - p/2 - q)(x - p/2 + 1/2) / (x (x + 1/2)).
pub fn w_func(x: &Rat, p: &Rat, q: &Rat) -> Result<Rat> {
    let den = x * (x + rat(1, 2));
    nonzero(&den, "w(x) denominator")?;
    Ok((x - p / int(2) - q) * (x - p / int(2) + rat(1, 2)) / den)
}

/// v(x) = (x - k) / x.
pub fn v_func(x: &Rat, k: &Rat) -> Result<Rat> {
    nonzero(x, "v(x) denominator")?;
    Ok((x - k) / x)
}

/// A single row shift: lambda +- epsilon_row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedShift {
    pub row: usize,
    pub sign: i8,
}

impl SignedShift {
    pub fn add(row: usize) -> Self {
        SignedShift { row, sign: 1 }
    }
    pub fn remove(row: usize) -> Self {
        SignedShift { row, sign: -1 }
    }

    pub fn apply(&self, lam: &Partition) -> Option<Partition> {
        if self.sign > 0 {
            lam.add_box_in_row(self.row)
        } else {
            lam.remove_box_in_row(self.row)
        }
    }
}

/// All shifts beta = +-epsilon_i such that lambda + beta is a partition.
pub fn admissible_shifts_r1(lam: &Partition) -> Vec<SignedShift> {
    let mut out = Vec::new();
    for i in 1..=lam.len() + 1 {
        if lam.add_box_in_row(i).is_some() {
            out.push(SignedShift::add(i));
        }
    }
    for i in 1..=lam.len() {
        if lam.remove_box_in_row(i).is_some() {
            out.push(SignedShift::remove(i));
        }
    }
    out
}

/// The explicit product form of the r = 1 Pieri coefficient V(lambda, h, beta).
pub fn pieri_coeff_r1_corollary(
    lam: &Partition,
    shift: SignedShift,
    k: &Rat,
    p: &Rat,
    q: &Rat,
    h: &Rat,
) -> Result<Rat> {
    shift.apply(lam).ok_or_else(|| {
        Error::InadmissibleShift(format!("{shift:?}"), format!("{lam:?}"))
    })?;
    let i = shift.row;
    let li = int(lam.part(i) as i64);
    let len = lam.len();
    let two_h = int(2) * h;
    let mut acc = Rat::one();
    if shift.sign > 0 {
        for j in 1..=len + 1 {
            if j == i {
                continue;
            }
            let lj = int(lam.part(j) as i64);
            let num = (&li - &lj + k * int(i as i64 - j as i64 - 1))
                * (&li + &lj + k * int((i + j) as i64 - 1) + &two_h);
            let den = (&li - &lj + k * int(i as i64 - j as i64))
                * (&li + &lj + k * int((i + j) as i64) + &two_h);
            nonzero(&den, "r=1 coefficient cross factor")?;
            acc *= num / den;
        }
        let num = (&li + k * int(i as i64 - 1) + h + p / int(2) + q)
            * (&li + k * int((i + len + 1) as i64) + &two_h)
            * (&li + k * int(i as i64) + h - p / int(2) + rat(1, 2));
        let den = (&li + k * int(i as i64 - len as i64 - 2))
            * (&li + k * int(i as i64) + h)
            * (&li + k * int(i as i64) + h + rat(1, 2));
        nonzero(&den, "r=1 coefficient tail")?;
        Ok(acc * num / den)
    } else {
        for j in 1..=len {
            if j == i {
                continue;
            }
            let lj = int(lam.part(j) as i64);
            let num = (&li - &lj + k * int(i as i64 - j as i64 + 1))
                * (&li + &lj + k * int((i + j) as i64 + 1) + &two_h);
            let den = (&li - &lj + k * int(i as i64 - j as i64))
                * (&li + &lj + k * int((i + j) as i64) + &two_h);
            nonzero(&den, "r=1 coefficient cross factor")?;
            acc *= num / den;
        }
        let num = (&li + k * int(i as i64 + 1) + h - p / int(2) - q)
            * (&li + k * int(i as i64 - len as i64))
            * (&li + k * int(i as i64) + h + p / int(2) - rat(1, 2));
        let den = (&li + k * int((i + len + 1) as i64) + &two_h)
            * (&li + k * int(i as i64) + h)
            * (&li + k * int(i as i64) + h - rat(1, 2));
        nonzero(&den, "r=1 coefficient tail")?;
        Ok(acc * num / den)
    }
}

/// The box-content form of the same coefficient. `m_rows` overrides the
/// height of the surrounding rectangle (the default is l(lambda)+1 when
/// adding and l(lambda) when removing); the result is independent of the
/// choice as long as the rectangle contains the larger diagram.
///
/// The printed form of the removal weight carries the argument 2k on its
/// minus-content numerator; matching it against the explicit product (and
/// against van Diejen's rule) forces -2k there, which is what this uses.
pub fn pieri_coeff_r1_boxform(
    lam: &Partition,
    shift: SignedShift,
    k: &Rat,
    p: &Rat,
    q: &Rat,
    h: &Rat,
    m_rows: Option<usize>,
) -> Result<Rat> {
    let mu = shift.apply(lam).ok_or_else(|| {
        Error::InadmissibleShift(format!("{shift:?}"), format!("{lam:?}"))
    })?;
    let i = shift.row;
    let len = lam.len();
    let two_h = int(2) * h;
    if shift.sign > 0 {
        let m = m_rows.unwrap_or(len + 1);
        if m < mu.len() {
            return Err(Error::Precondition(format!(
                "rectangle of {m} rows cannot contain {mu:?}"
            )));
        }
        let col = lam.part(i) as usize + 1; // column of the added box
        let c0 = |x: &Rat| box_content(ContentKind::Zero, &mu, i, col, x, k);
        let num = c0(&(h + p / int(2) + q))
            * c0(&(k * int(m as i64 + 1) + &two_h))
            * c0(&(h - p / int(2) + rat(1, 2) + k));
        let den = c0(&(h + k)) * c0(&(-(k * int(m as i64)))) * c0(&(h + rat(1, 2) + k));
        nonzero(&den, "K+ denominator")?;
        let mut acc = num / den;
        for r in 1..=m {
            if r == i {
                continue;
            }
            let num = box_content(ContentKind::Minus, lam, r, col, &int(1), k)
                * box_content(ContentKind::Plus, lam, r, col, &(&two_h - int(1)), k);
            let den = box_content(ContentKind::Minus, &mu, r, col, &int(1), k)
                * box_content(ContentKind::Plus, &mu, r, col, &(&two_h - int(1)), k);
            nonzero(&den, "B+ denominator")?;
            acc *= num / den;
        }
        Ok(acc)
    } else {
        let m = m_rows.unwrap_or(len);
        if m < lam.len() {
            return Err(Error::Precondition(format!(
                "rectangle of {m} rows cannot contain {lam:?}"
            )));
        }
        let col = lam.part(i) as usize; // column of the removed box
        let c0 = |x: &Rat| box_content(ContentKind::Zero, lam, i, col, x, k);
        let num = c0(&(int(2) * k + int(1) + h - p / int(2) - q))
            * c0(&(int(1) + k * int(1 - m as i64)))
            * c0(&(k + h + p / int(2) + rat(1, 2)));
        let den = c0(&(int(1) + k + h))
            * c0(&(int(1) + k * int(m as i64 + 2) + &two_h))
            * c0(&(h + rat(1, 2) + k));
        nonzero(&den, "K- denominator")?;
        let mut acc = num / den;
        for r in 1..=m {
            if r == i {
                continue;
            }
            let num = box_content(ContentKind::Minus, &mu, r, col, &(-int(2) * k), k)
                * box_content(ContentKind::Plus, &mu, r, col, &(int(2) * k + &two_h), k);
            let den = box_content(ContentKind::Minus, lam, r, col, &int(0), k)
                * box_content(ContentKind::Plus, lam, r, col, &two_h, k);
            nonzero(&den, "B- denominator")?;
            acc *= num / den;
        }
        Ok(acc)
    }
}

/// The gamma-ratio form of the coefficient on the finite locus
/// h = -kN - p/2 - q: the product of Upsilon(lambda+beta)/Upsilon(lambda)
/// over all roots pairing positively with beta.
pub fn pieri_coeff_r1_upsilon(
    lam: &Partition,
    shift: SignedShift,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    let target = shift.apply(lam).ok_or_else(|| {
        Error::InadmissibleShift(format!("{shift:?}"), format!("{lam:?}"))
    })?;
    if target.len() > n || lam.len() > n {
        return Err(Error::Precondition(format!(
            "need at least {} variables",
            target.len()
        )));
    }
    let mut acc = Rat::one();
    for root in bc_roots_all(n, k, p, q) {
        let pairing = root.coeff[shift.row - 1] as i64 * shift.sign as i64;
        if pairing <= 0 {
            continue;
        }
        let up = upsilon_bc(&target, &root, n, k, p, q)?;
        let down = upsilon_bc(lam, &root, n, k, p, q)?;
        nonzero(&down, "Upsilon(lambda, alpha)")?;
        acc *= up / down;
    }
    Ok(acc)
}

/// V(lambda, h, beta) cross-computed from the explicit product and the
/// box-content form, asserting equality.
pub fn pieri_coeff_r1(lam: &Partition, shift: SignedShift, ctx: &ParamContext) -> Result<Rat> {
    ctx.require_certified()?;
    let a = pieri_coeff_r1_corollary(lam, shift, ctx.k(), ctx.p(), ctx.q(), ctx.h())?;
    let b = pieri_coeff_r1_boxform(lam, shift, ctx.k(), ctx.p(), ctx.q(), ctx.h(), None)?;
    if a != b {
        return Err(Error::Other(format!(
            "Pieri coefficient forms disagree at {lam:?}, {shift:?}: {a} vs {b}"
        )));
    }
    Ok(a)
}

/// Checks the r = 1 Pieri identity exactly in the algebra of symmetric
/// functions: 2 p_1 J_lambda =
/// sum_beta V(lambda,h,beta) [ (J_lambda(0)/J_{lambda+beta}(0)) J_{lambda+beta} - J_lambda ].
pub fn verify_pieri_r1(lam: &Partition, ctx: &ParamContext) -> Result<bool> {
    ctx.require_certified()?;
    ctx.require_degree(lam.weight() as usize + 1)?;
    let j_lam = jacobi(lam, ctx)?;
    let one_box = Partition::new(vec![1])?;
    let lhs = monomial_sym(&one_box).mul(&j_lam)?.scale(&int(2));
    let j0_lam = jacobi_zero_closed(lam, ctx)?;
    let mut rhs = SymFunc::zero(crate::symfunc::Basis::Monomial);
    for shift in admissible_shifts_r1(lam) {
        let v = pieri_coeff_r1(lam, shift, ctx)?;
        let target = shift.apply(lam).expect("admissible");
        let j0_target = jacobi_zero_closed(&target, ctx)?;
        nonzero(&j0_target, "J(0) of the shifted partition")?;
        let moved = jacobi(&target, ctx)?.scale(&(&j0_lam / j0_target));
        rhs = rhs.add(&moved.sub(&j_lam)?.scale(&v))?;
    }
    Ok(lhs == rhs)
}

fn subsets_of_size(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn go(pool: &[usize], start: usize, size: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == size {
            out.push(acc.clone());
            return;
        }
        for idx in start..pool.len() {
            acc.push(pool[idx]);
            go(pool, idx + 1, size, acc, out);
            acc.pop();
        }
    }
    go(pool, 0, size, &mut acc, &mut out);
    out
}

fn sign_vectors(len: usize) -> Vec<Vec<i8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in out {
            let mut a = v.clone();
            a.push(1);
            next.push(a);
            let mut b = v;
            b.push(-1);
            next.push(b);
        }
        out = next;
    }
    out
}

/// One term of van Diejen's sum: the rows of L and J with their signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriTermSpec {
    pub l_rows: Vec<(usize, i8)>,
    pub j_rows: Vec<(usize, i8)>,
}

impl PieriTermSpec {
    pub fn r(&self) -> usize {
        self.l_rows.len() + self.j_rows.len()
    }

    /// lambda + sigma(J) when it is a partition.
    pub fn target(&self, lam: &Partition) -> Option<Partition> {
        let mut padded: Vec<i64> = (1..=lam.len() + self.r() + 1)
            .map(|i| lam.part(i) as i64)
            .collect();
        for &(row, sign) in &self.j_rows {
            if row == 0 || row > padded.len() {
                return None;
            }
            padded[row - 1] += sign as i64;
        }
        if padded.iter().any(|&x| x < 0) || padded.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        let parts: Vec<u32> = padded.iter().map(|&x| x as u32).collect();
        Partition::from_padded(&parts).ok()
    }
}

/// V^+_{sigma(J), I}(x): the w-factors on J, the internal v-pairs of J and
/// the v-pairs between J and the rest of I.
fn v_plus(j_rows: &[(usize, i8)], i_set: &[usize], x: &[Rat], k: &Rat, p: &Rat, q: &Rat) -> Result<Rat> {
    let sx = |row: usize, sign: i8| -> Rat {
        let v = &x[row - 1];
        if sign > 0 {
            v.clone()
        } else {
            -v.clone()
        }
    };
    let mut acc = Rat::one();
    for &(row, sign) in j_rows {
        acc *= w_func(&sx(row, sign), p, q)?;
    }
    for a in 0..j_rows.len() {
        for b in a + 1..j_rows.len() {
            let (ra, sa) = j_rows[a];
            let (rb, sb) = j_rows[b];
            let s = sx(ra, sa) + sx(rb, sb);
            acc *= v_func(&s, k)?;
            acc *= v_func(&(&s + int(1)), k)?;
        }
    }
    let in_j: Vec<usize> = j_rows.iter().map(|&(r, _)| r).collect();
    for &(row, sign) in j_rows {
        for &l in i_set {
            if in_j.contains(&l) {
                continue;
            }
            acc *= v_func(&(sx(row, sign) + &x[l - 1]), k)?;
            acc *= v_func(&(sx(row, sign) - &x[l - 1]), k)?;
        }
    }
    Ok(acc)
}

/// V^-_{sigma(L), J^c}(x): like V^+ but with the shifted pair factor
/// v(-s - 1) instead of v(s + 1).
fn v_minus(l_rows: &[(usize, i8)], jc_set: &[usize], x: &[Rat], k: &Rat, p: &Rat, q: &Rat) -> Result<Rat> {
    let sx = |row: usize, sign: i8| -> Rat {
        let v = &x[row - 1];
        if sign > 0 {
            v.clone()
        } else {
            -v.clone()
        }
    };
    let mut acc = Rat::one();
    for &(row, sign) in l_rows {
        acc *= w_func(&sx(row, sign), p, q)?;
    }
    for a in 0..l_rows.len() {
        for b in a + 1..l_rows.len() {
            let (ra, sa) = l_rows[a];
            let (rb, sb) = l_rows[b];
            let s = sx(ra, sa) + sx(rb, sb);
            acc *= v_func(&s, k)?;
            acc *= v_func(&(-s - int(1)), k)?;
        }
    }
    let in_l: Vec<usize> = l_rows.iter().map(|&(r, _)| r).collect();
    for &(row, sign) in l_rows {
        for &l in jc_set {
            if in_l.contains(&l) {
                continue;
            }
            acc *= v_func(&(sx(row, sign) + &x[l - 1]), k)?;
            acc *= v_func(&(sx(row, sign) - &x[l - 1]), k)?;
        }
    }
    Ok(acc)
}

/// The value (-1)^{|L|} V^-_{sigma(L),J^c} V^+_{sigma(J),I} at x = lambda - rho
/// for the finite system with N variables.
pub fn finite_pieri_term(
    lam: &Partition,
    spec: &PieriTermSpec,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    let x = lambda_minus_rho(lam, n, k, p, q);
    let i_set: Vec<usize> = (1..=n).collect();
    let in_j: Vec<usize> = spec.j_rows.iter().map(|&(r, _)| r).collect();
    let jc_set: Vec<usize> = i_set.iter().copied().filter(|r| !in_j.contains(r)).collect();
    let plus = v_plus(&spec.j_rows, &i_set, &x, k, p, q)?;
    let minus = v_minus(&spec.l_rows, &jc_set, &x, k, p, q)?;
    let sign = if spec.l_rows.len() % 2 == 0 { int(1) } else { int(-1) };
    Ok(sign * plus * minus)
}

/// Assembles the right-hand side of van Diejen's Pieri identity: the exact
/// coefficient of J_mu(u)/J_mu(0) for every reachable mu = lambda + sigma(J).
pub fn van_diejen_rhs(
    lam: &Partition,
    r: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<BTreeMap<Partition, Rat>> {
    if lam.len() > n || r > n {
        return Err(Error::Precondition(format!(
            "need l(lambda) <= N and r <= N, got {lam:?}, r = {r}, N = {n}"
        )));
    }
    let rows: Vec<usize> = (1..=n).collect();
    let mut out: BTreeMap<Partition, Rat> = BTreeMap::new();
    for j_size in 0..=r {
        let l_size = r - j_size;
        for j_set in subsets_of_size(&rows, j_size) {
            for j_signs in sign_vectors(j_size) {
                let j_rows: Vec<(usize, i8)> =
                    j_set.iter().copied().zip(j_signs.iter().copied()).collect();
                let probe = PieriTermSpec {
                    l_rows: vec![],
                    j_rows: j_rows.clone(),
                };
                let Some(target) = probe.target(lam) else {
                    continue;
                };
                if target.len() > n {
                    continue;
                }
                let pool: Vec<usize> = rows.iter().copied().filter(|x| !j_set.contains(x)).collect();
                for l_set in subsets_of_size(&pool, l_size) {
                    for l_signs in sign_vectors(l_size) {
                        let spec = PieriTermSpec {
                            l_rows: l_set.iter().copied().zip(l_signs.iter().copied()).collect(),
                            j_rows: j_rows.clone(),
                        };
                        let term = finite_pieri_term(lam, &spec, n, k, p, q)?;
                        if term.is_zero() {
                            continue;
                        }
                        *out.entry(target.clone()).or_insert_with(Rat::zero) += term;
                    }
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Checks van Diejen's identity exactly as polynomials in N variables:
/// 2^r E_r J_lambda / J_lambda(0) = sum coeff J_mu / J_mu(0).
pub fn verify_van_diejen(
    lam: &Partition,
    r: usize,
    n: usize,
    base: &ParamContext,
) -> Result<bool> {
    let ctx = base.finite_locus(n)?;
    ctx.require_degree(lam.weight() as usize + r)?;
    let coeffs = van_diejen_rhs(lam, r, n, ctx.k(), ctx.p(), ctx.q())?;
    let e_r = crate::multipoly::MultiPoly::elementary(&crate::multipoly::finite_vars(n), r);
    let j0 = jacobi_zero_closed(lam, &ctx)?;
    nonzero(&j0, "J_lambda(0)")?;
    let lhs = e_r
        .mul(&jacobi(lam, &ctx)?.expand_finite(n))?
        .scale(&(pow(&int(2), r as i64) / j0));
    let mut rhs = crate::multipoly::MultiPoly::zero(crate::multipoly::finite_vars(n));
    for (mu, c) in &coeffs {
        let j0_mu = jacobi_zero_closed(mu, &ctx)?;
        nonzero(&j0_mu, "J_mu(0)")?;
        rhs = rhs.add(&jacobi(mu, &ctx)?.expand_finite(n).scale(&(c / j0_mu)))?;
    }
    Ok(lhs == rhs)
}

/// Exhaustively checks the vanishing criterion: every term with
/// M(L) >= l(lambda) + 2r + 1 has a zero V^- factor.
pub fn verify_vanishing_bound(
    lam: &Partition,
    r: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<bool> {
    let rows: Vec<usize> = (1..=n).collect();
    let threshold = lam.len() + 2 * r + 1;
    for j_size in 0..r {
        let l_size = r - j_size;
        for j_set in subsets_of_size(&rows, j_size) {
            for j_signs in sign_vectors(j_size) {
                let j_rows: Vec<(usize, i8)> =
                    j_set.iter().copied().zip(j_signs.iter().copied()).collect();
                let probe = PieriTermSpec {
                    l_rows: vec![],
                    j_rows: j_rows.clone(),
                };
                if probe.target(lam).map(|t| t.len() > n).unwrap_or(true) {
                    continue;
                }
                let pool: Vec<usize> = rows.iter().copied().filter(|x| !j_set.contains(x)).collect();
                for l_set in subsets_of_size(&pool, l_size) {
                    if *l_set.iter().max().unwrap() < threshold {
                        continue;
                    }
                    for l_signs in sign_vectors(l_size) {
                        let spec = PieriTermSpec {
                            l_rows: l_set.iter().copied().zip(l_signs.iter().copied()).collect(),
                            j_rows: j_rows.clone(),
                        };
                        let x = lambda_minus_rho(lam, n, k, p, q);
                        let in_j: Vec<usize> = spec.j_rows.iter().map(|&(r, _)| r).collect();
                        let jc: Vec<usize> =
                            rows.iter().copied().filter(|r| !in_j.contains(r)).collect();
                        let minus = v_minus(&spec.l_rows, &jc, &x, k, p, q)?;
                        if !minus.is_zero() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// A univariate rational function with exact coefficients, dense in h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub num: Vec<Rat>,
    pub den: Vec<Rat>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: vec![],
            den: vec![Rat::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn eval_poly(coeffs: &[Rat], x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// None at poles of the stored representation.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let den = Self::eval_poly(&self.den, x);
        if den.is_zero() {
            return None;
        }
        Some(Self::eval_poly(&self.num, x) / den)
    }
}

/// Reconstructs the h-dependence of a single van Diejen term by exact
/// rational interpolation through its values on the finite loci
/// h_N = -kN - p/2 - q, N = N0, N0+1, ..., growing the degree budget
/// geometrically until three holdout nodes validate.
pub fn reconstruct_coeff_in_h(
    lam: &Partition,
    spec: &PieriTermSpec,
    k: &Rat,
    p: &Rat,
    q: &Rat,
    samples: usize,
) -> Result<RatFunc> {
    let r = spec.r();
    if let Some(max_l) = spec.l_rows.iter().map(|&(row, _)| row).max() {
        if max_l > lam.len() + 2 * r + 1 {
            return Err(Error::Precondition(format!(
                "M(L) = {max_l} exceeds l(lambda) + 2r + 1"
            )));
        }
    }
    if spec.target(lam).is_none() {
        return Err(Error::InadmissibleShift(
            format!("{spec:?}"),
            format!("{lam:?}"),
        ));
    }
    let n0 = lam.len() + 2 * r + 1;
    let mut nodes: Vec<(Rat, Rat)> = Vec::new();
    let mut n = n0;
    let budget_nodes = samples.max(8) + 40;
    while nodes.len() < budget_nodes && n < n0 + 4 * budget_nodes {
        let h = -(k * int(n as i64)) - p / int(2) - q;
        if let Ok(y) = finite_pieri_term(lam, spec, n, k, p, q) {
            nodes.push((h, y));
        }
        n += 1;
    }
    if nodes.iter().all(|(_, y)| y.is_zero()) {
        return Ok(RatFunc::zero());
    }
    // Scan total degree upward over all numerator/denominator splits: the
    // square system at the true degree pair is nonsingular, while an
    // overshoot on both sides would leave a common polynomial factor free.
    for total in 0..=20usize {
        for dd in 0..=total {
            let dn = total - dd;
            let need = dn + dd + 1 + 3;
            if nodes.len() < need {
                continue;
            }
            let m = dn + dd + 1;
            // unknowns: num coefficients 0..=dn, den coefficients 0..dd (monic)
            let mut a: Vec<Vec<Rat>> = Vec::with_capacity(m);
            let mut b: Vec<Rat> = Vec::with_capacity(m);
            for (h, y) in nodes.iter().take(m) {
                let mut row = Vec::with_capacity(m);
                let mut hp = Rat::one();
                for _ in 0..=dn {
                    row.push(hp.clone());
                    hp *= h;
                }
                let mut hp = Rat::one();
                for _ in 0..dd {
                    row.push(-(y * &hp));
                    hp *= h;
                }
                a.push(row);
                b.push(y * pow(h, dd as i64));
            }
            let Some(sol) = solve_linear(a, b) else {
                continue;
            };
            let mut num: Vec<Rat> = sol[..=dn].to_vec();
            let mut den: Vec<Rat> = sol[dn + 1..].to_vec();
            den.push(Rat::one());
            while num.last().map(Zero::is_zero).unwrap_or(false) {
                num.pop();
            }
            while den.len() > 1 && den.last().map(Zero::is_zero).unwrap_or(false) {
                den.pop();
            }
            let cand = RatFunc { num, den };
            let holdout_ok = nodes
                .iter()
                .skip(m)
                .take(3)
                .all(|(h, y)| cand.eval(h).map(|v| v == *y).unwrap_or(false));
            if holdout_ok {
                return Ok(cand);
            }
        }
    }
    Err(Error::Reconstruction(format!(
        "degree budget exhausted for {lam:?}, {spec:?}"
    )))
}

/// lambda contains the (m+1) x (n+1) rectangle.
pub fn ideal_contains(lam: &Partition, m: usize, n: usize) -> bool {
    lam.part(m + 1) >= n as u32 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealCase {
    /// h = -km - n - p/2 - q, images under the plain deformed evaluation.
    Phi,
    /// h = -k(m+2) - (n+1) + p/2 + q, images under the shifted evaluation.
    ThetaPhi,
}

/// Checks that the image of every Jacobi symmetric function of weight at
/// most dmax under the case's homomorphism vanishes exactly when lambda
/// contains the rectangle; in the Phi case the same is checked for the Jack
/// functions.
pub fn verify_singular_ideal(
    m: usize,
    n: usize,
    case: IdealCase,
    k: &Rat,
    p: &Rat,
    q: &Rat,
    dmax: usize,
) -> Result<bool> {
    let h = match case {
        IdealCase::Phi => -(k * int(m as i64)) - int(n as i64) - p / int(2) - q,
        IdealCase::ThetaPhi => {
            -(k * int(m as i64 + 2)) - int(n as i64 + 1) + p / int(2) + q
        }
    };
    let ctx = ParamContext::intern(k.clone(), p.clone(), q.clone(), h, dmax)?;
    for lam in Partition::all_up_to_weight(dmax as u32) {
        let j = jacobi(&lam, &ctx)?;
        let image = match case {
            IdealCase::Phi => j.expand_deformed(m, n, k)?,
            IdealCase::ThetaPhi => j.expand_deformed_theta(m, n, &ctx)?,
        };
        if image.is_zero() != ideal_contains(&lam, m, n) {
            return Ok(false);
        }
        if case == IdealCase::Phi {
            let jk = jack_with_k(&lam, k)?.expand_deformed(m, n, k)?;
            if jk.is_zero() != ideal_contains(&lam, m, n) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// At a generic (certified) h no Jacobi symmetric function maps to zero
/// under any deformed evaluation with m + n small.
pub fn verify_no_vanishing_generic(ctx: &ParamContext, dmax: usize, max_mn: usize) -> Result<bool> {
    ctx.require_certified()?;
    for lam in Partition::all_up_to_weight(dmax as u32) {
        let j = jacobi(&lam, ctx)?;
        for m in 0..=max_mn {
            for n in 0..=max_mn - m {
                if m + n == 0 {
                    continue;
                }
                if j.expand_deformed(m, n, ctx.k())?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// On the Phi branch, the span of the Jacobi functions indexed by partitions
/// containing the rectangle is closed under multiplication by E_1: expanding
/// 2 p_1 J_lambda in the Jacobi basis, every surviving term still contains
/// the rectangle.
pub fn verify_ideal_spanning(
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
    dmax: usize,
) -> Result<bool> {
    let h = -(k * int(m as i64)) - int(n as i64) - p / int(2) - q;
    let ctx = ParamContext::intern(k.clone(), p.clone(), q.clone(), h, dmax + 1)?;
    let one_box = Partition::new(vec![1])?;
    for lam in Partition::all_up_to_weight(dmax as u32) {
        if !ideal_contains(&lam, m, n) {
            continue;
        }
        let product = monomial_sym(&one_box).mul(&jacobi(&lam, &ctx)?)?.scale(&int(2));
        let expansion = crate::eigen::expand_in_jacobi_basis(&product, &ctx)?;
        for (nu, c) in &expansion {
            if !c.is_zero() && !ideal_contains(nu, m, n) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ctx() -> ParamContext {
        ParamContext::draw_generic(42, 7).unwrap()
    }

    #[test]
    fn w_and_v_examples() {
        let c = ctx();
        let (k, p, q) = (c.k(), c.p(), c.q());
        assert_eq!(v_func(k, k).unwrap(), int(0));
        assert_eq!(v_func(&(int(2) * k), k).unwrap(), rat(1, 2));
        assert_eq!(w_func(&(p / int(2) + q), p, q).unwrap(), int(0));
    }

    #[test]
    fn coefficient_forms_agree_on_all_admissible_shifts() {
        let c = ctx();
        for lam in Partition::all_up_to_weight(4) {
            for shift in admissible_shifts_r1(&lam) {
                let a = pieri_coeff_r1_corollary(&lam, shift, c.k(), c.p(), c.q(), c.h()).unwrap();
                let b = pieri_coeff_r1_boxform(&lam, shift, c.k(), c.p(), c.q(), c.h(), None).unwrap();
                assert_eq!(a, b, "lam={lam:?} shift={shift:?}");
            }
        }
    }

    #[test]
    fn rectangle_height_does_not_matter() {
        let c = ctx();
        let lam = pt(&[2, 1]);
        for shift in admissible_shifts_r1(&lam) {
            let defaults = pieri_coeff_r1_boxform(&lam, shift, c.k(), c.p(), c.q(), c.h(), None).unwrap();
            for extra in 1..=3usize {
                let m = lam.len() + 1 + extra;
                let bigger =
                    pieri_coeff_r1_boxform(&lam, shift, c.k(), c.p(), c.q(), c.h(), Some(m)).unwrap();
                assert_eq!(defaults, bigger, "shift={shift:?} M={m}");
            }
        }
    }

    #[test]
    fn upsilon_form_matches_on_the_finite_locus() {
        let base = ctx();
        let n = 5;
        let fin = base.finite_locus(n).unwrap();
        for lam in Partition::all_up_to_weight(3) {
            for shift in admissible_shifts_r1(&lam) {
                if shift.apply(&lam).unwrap().len() > n {
                    continue;
                }
                let closed =
                    pieri_coeff_r1_corollary(&lam, shift, fin.k(), fin.p(), fin.q(), fin.h()).unwrap();
                let ups = pieri_coeff_r1_upsilon(&lam, shift, n, base.k(), base.p(), base.q()).unwrap();
                assert_eq!(closed, ups, "lam={lam:?} shift={shift:?}");
            }
        }
    }

    #[test]
    fn coefficient_at_empty_partition_is_the_zero_value() {
        let c = ctx();
        let v = pieri_coeff_r1(&Partition::empty(), SignedShift::add(1), &c).unwrap();
        assert_eq!(v, jacobi_zero_closed(&pt(&[1]), &c).unwrap());
        // also matches the printed closed form
        let e = int(2) * c.h() + int(2) * c.k() + int(1);
        let expected = -int(2) * (c.h() + c.p() / int(2) + c.q()) * (&e - c.p()) / (c.k() * &e);
        assert_eq!(v, expected);
    }

    #[test]
    fn removing_from_an_empty_row_is_inadmissible() {
        let c = ctx();
        assert!(matches!(
            pieri_coeff_r1(&pt(&[2, 2]), SignedShift::remove(1), &c),
            Err(Error::InadmissibleShift(_, _))
        ));
        assert!(matches!(
            pieri_coeff_r1(&Partition::empty(), SignedShift::remove(1), &c),
            Err(Error::InadmissibleShift(_, _))
        ));
    }

    #[test]
    fn pieri_r1_identity_holds() {
        let c = ctx();
        assert!(verify_pieri_r1(&Partition::empty(), &c).unwrap());
        assert!(verify_pieri_r1(&pt(&[2, 1]), &c).unwrap());
    }

    #[test]
    fn pieri_r1_identity_fails_with_a_mutated_coefficient() {
        // replace one coefficient by zero: drop one term from the sum
        let c = ctx();
        let lam = pt(&[1]);
        let j_lam = jacobi(&lam, &c).unwrap();
        let lhs = monomial_sym(&pt(&[1])).mul(&j_lam).unwrap().scale(&int(2));
        let j0_lam = jacobi_zero_closed(&lam, &c).unwrap();
        let shifts = admissible_shifts_r1(&lam);
        let mut rhs = SymFunc::zero(crate::symfunc::Basis::Monomial);
        for (idx, shift) in shifts.iter().enumerate() {
            if idx == 0 {
                continue; // the mutation
            }
            let v = pieri_coeff_r1(&lam, *shift, &c).unwrap();
            let target = shift.apply(&lam).unwrap();
            let j0t = jacobi_zero_closed(&target, &c).unwrap();
            let moved = jacobi(&target, &c).unwrap().scale(&(&j0_lam / j0t));
            rhs = rhs.add(&moved.sub(&j_lam).unwrap().scale(&v)).unwrap();
        }
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn van_diejen_r1_matches_the_closed_coefficient() {
        let base = ctx();
        let n = 4;
        let fin = base.finite_locus(n).unwrap();
        let lam = pt(&[1]);
        let rhs = van_diejen_rhs(&lam, 1, n, fin.k(), fin.p(), fin.q()).unwrap();
        for shift in admissible_shifts_r1(&lam) {
            let target = shift.apply(&lam).unwrap();
            if target.len() > n {
                continue;
            }
            let closed = pieri_coeff_r1(&lam, shift, &fin).unwrap();
            assert_eq!(rhs.get(&target), Some(&closed), "shift {shift:?}");
        }
    }

    #[test]
    fn van_diejen_identity_small_case() {
        let base = ctx();
        assert!(verify_van_diejen(&pt(&[2, 1]), 2, 4, &base).unwrap());
    }

    #[test]
    fn vanishing_bound_is_exhaustive() {
        let base = ctx();
        let (k, p, q) = (base.k(), base.p(), base.q());
        for lam in [Partition::empty(), pt(&[1]), pt(&[2, 1])] {
            for r in 1..=2usize {
                assert!(verify_vanishing_bound(&lam, r, 7, k, p, q).unwrap(), "lam={lam:?} r={r}");
            }
        }
    }

    #[test]
    fn reconstruction_matches_the_closed_form() {
        let base = ctx();
        let (k, p, q) = (base.k(), base.p(), base.q());
        // r = 1, lambda = empty, J = {1}, sigma = +
        let spec = PieriTermSpec {
            l_rows: vec![],
            j_rows: vec![(1, 1)],
        };
        let lam = Partition::empty();
        let rf = reconstruct_coeff_in_h(&lam, &spec, k, p, q, 8).unwrap();
        for probe in [rat(3, 8), rat(-7, 5), rat(11, 13)] {
            let closed = pieri_coeff_r1_corollary(&lam, SignedShift::add(1), k, p, q, &probe).unwrap();
            assert_eq!(rf.eval(&probe), Some(closed), "h = {probe}");
        }
        // a term at the vanishing bound M(L) = l(lambda) + 2r + 1
        // reconstructs to the zero function
        let dead = PieriTermSpec {
            l_rows: vec![(5, 1)],
            j_rows: vec![(1, 1)],
        };
        let rf0 = reconstruct_coeff_in_h(&lam, &dead, k, p, q, 8).unwrap();
        assert!(rf0.is_zero());
        // holdout check at a fresh N
        let fresh_n = 19;
        let h = -(k * int(fresh_n as i64)) - p / int(2) - q;
        let direct = finite_pieri_term(&lam, &spec, fresh_n, k, p, q).unwrap();
        assert_eq!(rf.eval(&h), Some(direct));
    }

    #[test]
    fn ideal_membership_examples() {
        assert!(ideal_contains(&pt(&[2, 2]), 1, 1));
        assert!(!ideal_contains(&pt(&[3, 1]), 1, 1));
        assert!(!ideal_contains(&Partition::empty(), 1, 1));
        assert!(!ideal_contains(&Partition::empty(), 0, 0));
        assert!(ideal_contains(&pt(&[1]), 0, 0));
    }

    #[test]
    fn singular_ideals_both_branches() {
        let base = ctx();
        let (k, p, q) = (base.k(), base.p(), base.q());
        assert!(verify_singular_ideal(1, 1, IdealCase::Phi, k, p, q, 5).unwrap());
        assert!(verify_singular_ideal(1, 1, IdealCase::ThetaPhi, k, p, q, 5).unwrap());
    }

    #[test]
    fn no_vanishing_at_generic_h() {
        let base = ParamContext::draw_generic(42, 4).unwrap();
        assert!(verify_no_vanishing_generic(&base, 4, 3).unwrap());
    }

    #[test]
    fn ideal_span_closed_under_e1() {
        let base = ctx();
        assert!(verify_ideal_spanning(1, 1, base.k(), base.p(), base.q(), 5).unwrap());
    }
}
