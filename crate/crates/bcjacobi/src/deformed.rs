//! The deformed BC(m,n) theory: fat-hook combinatorics, super Jack and
//! super Jacobi polynomials, the highest-term normalization, the super
//! evaluation product over the deformed root system, the deformed Pieri
//! rule with its bispectral Koornwinder partner, deformed interpolation
//! values via restriction, and the Bernoulli generators of the restricted
//! shifted algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::bernoulli::bernoulli_even;
use crate::eigen::{jack_with_k, jacobi};
use crate::error::{Error, Result};
use crate::gamma::{nonzero, upsilon_ratio};
use crate::interpolation::interpolation_value;
use crate::multipoly::MultiPoly;
use crate::params::ParamContext;
use crate::partition::{content_product, ContentKind, Partition};
use crate::rational::{int, pow, rat, Rat};

/// Coordinates of a point in the deformed weight space: w on the epsilon
/// block (length m), z on the delta block (length n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatHookCoord {
    pub w: Vec<Rat>,
    pub z: Vec<Rat>,
}

impl FatHookCoord {
    pub fn zero(m: usize, n: usize) -> Self {
        FatHookCoord {
            w: vec![Rat::zero(); m],
            z: vec![Rat::zero(); n],
        }
    }
}

/// True when lambda lies in the fat (m,n)-hook, i.e. lambda_{m+1} <= n.
pub fn in_fat_hook(lam: &Partition, m: usize, n: usize) -> bool {
    lam.part(m + 1) as usize <= n
}

/// The first-n-columns subdiagram of lambda.
pub fn nu_part(lam: &Partition, n: usize) -> Partition {
    let parts: Vec<u32> = lam
        .parts()
        .iter()
        .map(|&p| p.min(n as u32))
        .collect();
    Partition::from_padded(&parts).expect("weakly decreasing")
}

/// The remaining rows of lambda after removing the first n columns.
pub fn mu_part(lam: &Partition, n: usize) -> Partition {
    let parts: Vec<u32> = lam
        .parts()
        .iter()
        .map(|&p| p.saturating_sub(n as u32))
        .collect();
    Partition::from_padded(&parts).expect("weakly decreasing")
}

/// The hook embedding chi(lambda) = (w, z): w_i the rows of lambda with the
/// first n columns removed, z_j the column lengths of those first n columns.
pub fn chi(lam: &Partition, m: usize, n: usize) -> Result<FatHookCoord> {
    if !in_fat_hook(lam, m, n) {
        return Err(Error::FatHook(format!("{lam:?}"), m, n));
    }
    let mu = mu_part(lam, n);
    let w: Vec<Rat> = (1..=m).map(|i| int(mu.part(i) as i64)).collect();
    let conj = lam.conjugate();
    let z: Vec<Rat> = (1..=n).map(|j| int(conj.part(j) as i64)).collect();
    Ok(FatHookCoord { w, z })
}

/// A root of the deformed BC(m,n) system as integer coefficients on the
/// epsilon and delta bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DRoot {
    pub e: Vec<i32>,
    pub d: Vec<i32>,
}

impl DRoot {
    fn new(m: usize, n: usize) -> Self {
        DRoot {
            e: vec![0; m],
            d: vec![0; n],
        }
    }

    /// Deformed bilinear form: (eps_i, eps_i) = 1, (delta_p, delta_p) = k.
    fn deformed_norm(&self, k: &Rat) -> Rat {
        let e: i64 = self.e.iter().map(|&c| (c * c) as i64).sum();
        let d: i64 = self.d.iter().map(|&c| (c * c) as i64).sum();
        int(e) + k * int(d)
    }

    /// (x, alpha) in the deformed form for a point x = (w, z).
    fn deformed_pair_point(&self, x: &FatHookCoord, k: &Rat) -> Rat {
        let e: Rat = x
            .w
            .iter()
            .zip(&self.e)
            .map(|(xi, &c)| xi * int(c as i64))
            .sum();
        let d: Rat = x
            .z
            .iter()
            .zip(&self.d)
            .map(|(xj, &c)| xj * int(c as i64))
            .sum();
        e + k * d
    }

    /// (x, alpha_vee) = 2 (x, alpha) / (alpha, alpha), deformed.
    fn covector_pair(&self, x: &FatHookCoord, k: &Rat) -> Result<Rat> {
        let norm = self.deformed_norm(k);
        nonzero(&norm, "deformed (alpha, alpha)")?;
        Ok(int(2) * self.deformed_pair_point(x, k) / norm)
    }

    /// (beta, alpha_vee) for another root beta, deformed.
    fn covector_pair_root(&self, beta: &DRoot, k: &Rat) -> Result<Rat> {
        let norm = self.deformed_norm(k);
        nonzero(&norm, "deformed (alpha, alpha)")?;
        let e: i64 = self
            .e
            .iter()
            .zip(&beta.e)
            .map(|(&a, &b)| (a * b) as i64)
            .sum();
        let d: i64 = self
            .d
            .iter()
            .zip(&beta.d)
            .map(|(&a, &b)| (a * b) as i64)
            .sum();
        Ok(int(2) * (int(e) + k * int(d)) / norm)
    }

    /// Standard pairing used only to select roots on one side of beta.
    fn standard_pair(&self, other: &DRoot) -> i64 {
        let e: i64 = self
            .e
            .iter()
            .zip(&other.e)
            .map(|(&a, &b)| (a * b) as i64)
            .sum();
        let d: i64 = self
            .d
            .iter()
            .zip(&other.d)
            .map(|(&a, &b)| (a * b) as i64)
            .sum();
        e + d
    }

    fn proportional_to(&self, other: &DRoot) -> bool {
        // roots here are proportional only when one is +-1 or +-2 times the other
        for scale in [1i32, -1, 2, -2] {
            let se: Vec<i32> = other.e.iter().map(|&c| scale * c).collect();
            let sd: Vec<i32> = other.d.iter().map(|&c| scale * c).collect();
            if self.e == se && self.d == sd {
                return true;
            }
            let he: Vec<i32> = self.e.iter().map(|&c| scale * c).collect();
            let hd: Vec<i32> = self.d.iter().map(|&c| scale * c).collect();
            if he == other.e && hd == other.d {
                return true;
            }
        }
        false
    }
}

/// Multiplicities per the admissible deformation: m(eps) = p, m(2eps) = q,
/// m(delta) = r, m(2delta) = s, m(eps+-eps) = k, m(delta+-delta) = 1/k,
/// m(delta+-eps) = 1, where p = kr and 2q + 1 = k(2s + 1).
fn multiplicity(root: &DRoot, k: &Rat, p: &Rat, q: &Rat) -> Rat {
    let ne: Vec<i32> = root.e.iter().map(|&c| c.abs()).filter(|&c| c != 0).collect();
    let nd: Vec<i32> = root.d.iter().map(|&c| c.abs()).filter(|&c| c != 0).collect();
    match (ne.as_slice(), nd.as_slice()) {
        ([1], []) => p.clone(),
        ([2], []) => q.clone(),
        ([], [1]) => p / k,                                   // r
        ([], [2]) => (int(2) * q + int(1) - k) / (int(2) * k), // s
        ([1, 1], []) => k.clone(),
        ([], [1, 1]) => k.clone().recip(),
        ([1], [1]) => int(1),
        _ => unreachable!("not a BC(m,n) root: {root:?}"),
    }
}

/// m(alpha/2), nonzero only for the doubled roots.
fn multiplicity_half(root: &DRoot, k: &Rat, p: &Rat, _q: &Rat) -> Rat {
    let ne: Vec<i32> = root.e.iter().map(|&c| c.abs()).filter(|&c| c != 0).collect();
    let nd: Vec<i32> = root.d.iter().map(|&c| c.abs()).filter(|&c| c != 0).collect();
    match (ne.as_slice(), nd.as_slice()) {
        ([2], []) => p.clone(),
        ([], [2]) => p / k, // r
        _ => Rat::zero(),
    }
}

/// The chosen positive roots: eps_i, 2eps_i, eps_i +- eps_j (i < j),
/// delta_p, 2delta_p, delta_p +- delta_q (p < q), and delta_p +- eps_i.
pub(crate) fn positive_roots(m: usize, n: usize) -> Vec<DRoot> {
    let mut roots = Vec::new();
    for i in 0..m {
        let mut r = DRoot::new(m, n);
        r.e[i] = 1;
        roots.push(r.clone());
        r.e[i] = 2;
        roots.push(r);
    }
    for i in 0..m {
        for j in i + 1..m {
            for sj in [1, -1] {
                let mut r = DRoot::new(m, n);
                r.e[i] = 1;
                r.e[j] = sj;
                roots.push(r);
            }
        }
    }
    for p in 0..n {
        let mut r = DRoot::new(m, n);
        r.d[p] = 1;
        roots.push(r.clone());
        r.d[p] = 2;
        roots.push(r);
    }
    for p in 0..n {
        for q in p + 1..n {
            for sq in [1, -1] {
                let mut r = DRoot::new(m, n);
                r.d[p] = 1;
                r.d[q] = sq;
                roots.push(r);
            }
        }
    }
    for p in 0..n {
        for i in 0..m {
            for si in [1, -1] {
                let mut r = DRoot::new(m, n);
                r.d[p] = 1;
                r.e[i] = si;
                roots.push(r);
            }
        }
    }
    roots
}

pub(crate) fn all_roots(m: usize, n: usize) -> Vec<DRoot> {
    let mut roots = positive_roots(m, n);
    let negatives: Vec<DRoot> = roots
        .iter()
        .map(|r| DRoot {
            e: r.e.iter().map(|&c| -c).collect(),
            d: r.d.iter().map(|&c| -c).collect(),
        })
        .collect();
    roots.extend(negatives);
    roots
}

/// The deformed half-sum of positive roots, in closed form:
/// rho = -sum_i (h + n + k i) eps_i - k^{-1} sum_j (h + k/2 - 1/2 + j) delta_j
/// with h = -km - n - p/2 - q.
pub fn rho_deformed(m: usize, n: usize, k: &Rat, p: &Rat, q: &Rat) -> FatHookCoord {
    let h = -(k * int(m as i64)) - int(n as i64) - p / int(2) - q;
    let w = (1..=m)
        .map(|i| -(&h + int(n as i64) + k * int(i as i64)))
        .collect();
    let z = (1..=n)
        .map(|j| -(&h + k / int(2) - rat(1, 2) + int(j as i64)) / k)
        .collect();
    FatHookCoord { w, z }
}

fn fat_hook_sub(a: &FatHookCoord, b: &FatHookCoord) -> FatHookCoord {
    FatHookCoord {
        w: a.w.iter().zip(&b.w).map(|(x, y)| x - y).collect(),
        z: a.z.iter().zip(&b.z).map(|(x, y)| x - y).collect(),
    }
}

/// One Upsilon factor of the super evaluation product.
fn upsilon_deformed(
    lam: &Partition,
    root: &DRoot,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    let rho = rho_deformed(m, n, k, p, q);
    let shifted = fat_hook_sub(&chi(lam, m, n)?, &rho);
    let minus_rho = fat_hook_sub(&FatHookCoord::zero(m, n), &rho);
    let x_lam = root.covector_pair(&shifted, k)?;
    let x_zero = root.covector_pair(&minus_rho, k)?;
    upsilon_ratio(
        &x_lam,
        &x_zero,
        &multiplicity(root, k, p, q),
        &multiplicity_half(root, k, p, q),
    )
}

/// The value of the normalized super Jacobi polynomial at zero, as the
/// product of Upsilon factors over the deformed positive roots.
pub fn super_jacobi_zero_product(
    lam: &Partition,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    if !in_fat_hook(lam, m, n) {
        return Err(Error::FatHook(format!("{lam:?}"), m, n));
    }
    let mut acc = Rat::one();
    for root in positive_roots(m, n) {
        acc *= upsilon_deformed(lam, &root, m, n, k, p, q)?;
    }
    Ok(acc)
}

fn deformed_ctx(m: usize, n: usize, k: &Rat, p: &Rat, q: &Rat, degree: usize) -> Result<ParamContext> {
    let h = -(k * int(m as i64)) - int(n as i64) - p / int(2) - q;
    ParamContext::intern(k.clone(), p.clone(), q.clone(), h, degree)
}

/// The super Jacobi polynomial: the image of the Jacobi symmetric function
/// on the locus h = -km - n - p/2 - q under the deformed evaluation.
/// Partitions outside the fat hook are rejected rather than mapped to zero.
pub fn super_jacobi(
    lam: &Partition,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<MultiPoly> {
    if !in_fat_hook(lam, m, n) {
        return Err(Error::FatHook(format!("{lam:?}"), m, n));
    }
    let ctx = deformed_ctx(m, n, k, p, q, lam.weight() as usize)?;
    jacobi(lam, &ctx)?.expand_deformed(m, n, k)
}

/// The super Jack polynomial: the image of the Jack symmetric function.
pub fn super_jack(lam: &Partition, m: usize, n: usize, k: &Rat) -> Result<MultiPoly> {
    if !in_fat_hook(lam, m, n) {
        return Err(Error::FatHook(format!("{lam:?}"), m, n));
    }
    jack_with_k(lam, k)?.expand_deformed(m, n, k)
}

/// The coefficient of the highest term of the super Jacobi polynomial:
/// (-1)^{|nu|} 2^{|lambda|} C-_lambda(1) C-_mu(-k) / (C-_lambda(-k) C-_mu(1))
/// with nu the first n columns and mu the rest.
pub fn a_lambda(lam: &Partition, n: usize, k: &Rat) -> Result<Rat> {
    let nu = nu_part(lam, n);
    let mu = mu_part(lam, n);
    let sign = if nu.weight() % 2 == 0 { int(1) } else { int(-1) };
    let num = content_product(ContentKind::Minus, lam, &int(1), k)
        * content_product(ContentKind::Minus, &mu, &(-k.clone()), k);
    let den = content_product(ContentKind::Minus, lam, &(-k.clone()), k)
        * content_product(ContentKind::Minus, &mu, &int(1), k);
    nonzero(&den, "a_lambda denominator")?;
    Ok(sign * pow(&int(2), lam.weight() as i64) * num / den)
}

/// Extracts the distinct (u-shape, v-shape) pairs of a bisymmetric
/// polynomial, with the coefficient of the dominant representative.
fn bisymmetric_orbits(poly: &MultiPoly, m: usize) -> BTreeMap<(Vec<u32>, Vec<u32>), Rat> {
    let mut out = BTreeMap::new();
    for (e, c) in poly.terms() {
        let mut u: Vec<u32> = e[..m].to_vec();
        let mut v: Vec<u32> = e[m..].to_vec();
        u.sort_unstable_by(|a, b| b.cmp(a));
        v.sort_unstable_by(|a, b| b.cmp(a));
        if e[..m] == u[..] && e[m..] == v[..] {
            out.insert((u, v), c.clone());
        }
    }
    out
}

/// Partial-sum comparison on the concatenated vector (v-shape, u-shape).
/// Returns true when a <= b entry-by-entry in partial sums.
fn pair_order_le(a: &(Vec<u32>, Vec<u32>), b: &(Vec<u32>, Vec<u32>)) -> bool {
    let concat = |x: &(Vec<u32>, Vec<u32>)| -> Vec<i64> {
        x.1.iter()
            .chain(x.0.iter())
            .map(|&v| v as i64)
            .collect()
    };
    let xa = concat(a);
    let xb = concat(b);
    let mut sa = 0i64;
    let mut sb = 0i64;
    for (ca, cb) in xa.iter().zip(&xb) {
        sa += ca;
        sb += cb;
        if sa > sb {
            return false;
        }
    }
    true
}

/// Checks that the highest term of the super Jacobi polynomial with respect
/// to the concatenated partial-sum order is m_mu(u) m_{nu'}(v) with
/// coefficient a_lambda, and the same for the super Jack polynomial with
/// b_lambda = a_lambda 2^{-|lambda|}.
pub fn highest_term_check(
    lam: &Partition,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<bool> {
    let coords = chi(lam, m, n)?;
    let u_shape: Vec<u32> = coords
        .w
        .iter()
        .map(|r| crate::rational::to_i64(r).unwrap() as u32)
        .collect();
    let v_shape: Vec<u32> = coords
        .z
        .iter()
        .map(|r| crate::rational::to_i64(r).unwrap() as u32)
        .collect();
    let top = (u_shape, v_shape);
    let a_l = a_lambda(lam, n, k)?;
    let sj = super_jacobi(lam, m, n, k, p, q)?;
    let orbits = bisymmetric_orbits(&sj, m);
    match orbits.get(&top) {
        Some(c) if *c == a_l => {}
        _ => return Ok(false),
    }
    for key in orbits.keys() {
        if key != &top && !pair_order_le(key, &top) {
            return Ok(false);
        }
    }
    let sp = super_jack(lam, m, n, k)?;
    let b_l = a_l / pow(&int(2), lam.weight() as i64);
    let orbits = bisymmetric_orbits(&sp, m);
    match orbits.get(&top) {
        Some(c) if *c == b_l => {}
        _ => return Ok(false),
    }
    for key in orbits.keys() {
        if key != &top && !pair_order_le(key, &top) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A single-box move in the hook coordinates: +-eps_i moves a box in row i
/// (columns beyond n), +-delta_j moves a box in column j <= n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformedShift {
    Eps(usize, i8),
    Delta(usize, i8),
}

/// lambda + beta as a diagram move, when admissible.
pub fn apply_deformed_shift(
    lam: &Partition,
    shift: DeformedShift,
    m: usize,
    n: usize,
) -> Option<Partition> {
    if !in_fat_hook(lam, m, n) {
        return None;
    }
    let target = match shift {
        DeformedShift::Eps(i, sign) => {
            if i == 0 || i > m {
                return None;
            }
            if sign > 0 {
                // new box in row i lands in column lambda_i + 1 > n
                if (lam.part(i) as usize) < n {
                    return None;
                }
                lam.add_box_in_row(i)?
            } else {
                // removed box sits in column lambda_i > n
                if lam.part(i) as usize <= n {
                    return None;
                }
                lam.remove_box_in_row(i)?
            }
        }
        DeformedShift::Delta(j, sign) => {
            if j == 0 || j > n {
                return None;
            }
            let conj = lam.conjugate();
            let moved = if sign > 0 {
                conj.add_box_in_row(j)?
            } else {
                conj.remove_box_in_row(j)?
            };
            moved.conjugate()
        }
    };
    in_fat_hook(&target, m, n).then_some(target)
}

/// All admissible moves from lambda inside the hook.
pub fn admissible_deformed_shifts(lam: &Partition, m: usize, n: usize) -> Vec<DeformedShift> {
    let mut out = Vec::new();
    for i in 1..=m {
        for sign in [1i8, -1] {
            if apply_deformed_shift(lam, DeformedShift::Eps(i, sign), m, n).is_some() {
                out.push(DeformedShift::Eps(i, sign));
            }
        }
    }
    for j in 1..=n {
        for sign in [1i8, -1] {
            if apply_deformed_shift(lam, DeformedShift::Delta(j, sign), m, n).is_some() {
                out.push(DeformedShift::Delta(j, sign));
            }
        }
    }
    out
}

fn shift_root(shift: DeformedShift, m: usize, n: usize) -> DRoot {
    let mut r = DRoot::new(m, n);
    match shift {
        DeformedShift::Eps(i, sign) => r.e[i - 1] = sign as i32,
        DeformedShift::Delta(j, sign) => r.d[j - 1] = sign as i32,
    }
    r
}

/// A value linear in a formal deformation parameter t, used to take exact
/// limits of the weight formulas at lattice points where a vanishing
/// numerator factor sits over a vanishing denominator factor.
#[derive(Clone, Debug)]
struct Lin {
    a: Rat, // constant term
    b: Rat, // slope along the deformation line
}

impl Lin {
    fn add_const(&self, c: &Rat) -> Self {
        Lin {
            a: &self.a + c,
            b: self.b.clone(),
        }
    }
}

/// A product of linear factors over another, evaluated in the limit t -> 0.
#[derive(Default)]
struct FactorProduct {
    num: Vec<Lin>,
    den: Vec<Lin>,
    scalar: Rat,
}

impl FactorProduct {
    fn new() -> Self {
        FactorProduct {
            num: vec![],
            den: vec![],
            scalar: Rat::one(),
        }
    }

    fn push_num(&mut self, f: Lin) {
        self.num.push(f);
    }

    fn push_den(&mut self, f: Lin) {
        self.den.push(f);
    }

    fn scale(&mut self, c: &Rat) {
        self.scalar *= c;
    }

    /// The limit as t -> 0: factors with zero constant term contribute their
    /// slope and one power of t; the powers must balance.
    fn limit(self) -> Result<Rat> {
        if self
            .den
            .iter()
            .any(|f| f.a.is_zero() && f.b.is_zero())
        {
            return Err(Error::DegenerateFactor(
                "identically vanishing denominator factor".into(),
            ));
        }
        let mut value = self.scalar;
        let mut t_order: i64 = 0;
        for f in &self.num {
            if f.a.is_zero() {
                if f.b.is_zero() {
                    return Ok(Rat::zero()); // identically zero numerator factor
                }
                t_order += 1;
                value *= &f.b;
            } else {
                value *= &f.a;
            }
        }
        for f in &self.den {
            if f.a.is_zero() {
                t_order -= 1;
                value /= &f.b;
            } else {
                value /= &f.a;
            }
        }
        match t_order.cmp(&0) {
            std::cmp::Ordering::Greater => Ok(Rat::zero()),
            std::cmp::Ordering::Equal => Ok(value),
            std::cmp::Ordering::Less => Err(Error::DegenerateFactor(
                "weight has a genuine pole at the spectral point".into(),
            )),
        }
    }
}

/// (x + t g, alpha_vee) as a linear function of t.
fn covector_pair_lin(root: &DRoot, x: &FatHookCoord, g: &DRoot, k: &Rat) -> Result<Lin> {
    let a = root.covector_pair(x, k)?;
    let b = root.covector_pair_root(g, k)?;
    Ok(Lin { a, b })
}

fn sw1_factors(
    point: &FatHookCoord,
    direction: Option<&DRoot>,
    beta: &DRoot,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<FactorProduct> {
    let zero_dir = DRoot::new(m, n);
    let g = direction.unwrap_or(&zero_dir);
    let mut prod = FactorProduct::new();
    let bpair = covector_pair_lin(beta, point, g, k)?;
    let m_beta = multiplicity(beta, k, p, q);
    let m_2beta = {
        let doubled = DRoot {
            e: beta.e.iter().map(|&c| 2 * c).collect(),
            d: beta.d.iter().map(|&c| 2 * c).collect(),
        };
        multiplicity(&doubled, k, p, q)
    };
    let norm = beta.deformed_norm(k);
    nonzero(&norm, "(beta, beta)")?;
    prod.scale(&norm.recip());
    prod.push_num(bpair.add_const(&(-&m_beta - int(2) * m_2beta)));
    prod.push_num(bpair.add_const(&(int(1) - &m_beta)));
    prod.push_den(bpair.clone());
    prod.push_den(bpair.add_const(&int(1)));
    for alpha in all_roots(m, n) {
        if alpha.standard_pair(beta) <= 0 || alpha.proportional_to(beta) {
            continue;
        }
        let apair = covector_pair_lin(&alpha, point, g, k)?;
        let cross = alpha.covector_pair_root(beta, k)?;
        prod.push_num(apair.add_const(&(-multiplicity(&alpha, k, p, q))));
        prod.push_den(apair.add_const(&(cross - int(1))));
    }
    Ok(prod)
}

/// The deformed Koornwinder weight W(z, beta) in its root-system form, at a
/// generic point z (degenerate points are an error here; the lattice-point
/// limits live in the Pieri coefficient).
pub fn koornwinder_weight_sw1(
    point: &FatHookCoord,
    shift: DeformedShift,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    let beta = shift_root(shift, m, n);
    sw1_factors(point, None, &beta, m, n, k, p, q)?.limit()
}

/// The same weight from the explicit factorized form.
pub fn koornwinder_weight_explicit(
    point: &FatHookCoord,
    shift: DeformedShift,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    let x = &point.w;
    let y = &point.z;
    let r_mult = p / k;
    let s_mult = (int(2) * q + int(1) - k) / (int(2) * k);
    let checked_div = |num: Rat, den: Rat| -> Result<Rat> {
        nonzero(&den, "Koornwinder explicit factor")?;
        Ok(num / den)
    };
    match shift {
        DeformedShift::Eps(i, sign) => {
            let i = i - 1;
            let s = int(sign as i64);
            let xi = x[i].clone() * &s;
            let mut acc = checked_div(&xi * int(2) - (p + int(2) * q), &xi * int(2))?
                * checked_div(&xi * int(2) + int(1) - p, &xi * int(2) + int(1))?;
            for j in 0..m {
                if j == i {
                    continue;
                }
                acc *= checked_div(&xi - &x[j] - k, &xi - &x[j])?;
                acc *= checked_div(&xi + &x[j] - k, &xi + &x[j])?;
            }
            for j in 0..n {
                let base_p = &xi + k * &y[j] + (int(1) - k) / int(2);
                acc *= checked_div(&base_p - int(1), base_p.clone())?;
                let base_m = &xi - k * &y[j] + (int(1) - k) / int(2);
                acc *= checked_div(&base_m - int(1), base_m.clone())?;
            }
            Ok(acc)
        }
        DeformedShift::Delta(j, sign) => {
            let j = j - 1;
            let s = int(sign as i64);
            let yj = y[j].clone() * &s;
            let mut acc = checked_div(
                &yj * int(2) - (&r_mult + int(2) * &s_mult),
                &yj * int(2),
            )? * checked_div(&yj * int(2) + int(1) - &r_mult, &yj * int(2) + int(1))?;
            acc /= k.clone();
            for i in 0..n {
                if i == j {
                    continue;
                }
                let kinv = k.clone().recip();
                acc *= checked_div(&yj - &y[i] - &kinv, &yj - &y[i])?;
                acc *= checked_div(&yj + &y[i] - &kinv, &yj + &y[i])?;
            }
            for i in 0..m {
                let kinv = k.clone().recip();
                let base_p = &yj + &kinv * &x[i] + (int(1) - &kinv) / int(2);
                acc *= checked_div(&base_p - int(1), base_p.clone())?;
                let base_m = &yj - &kinv * &x[i] + (int(1) - &kinv) / int(2);
                acc *= checked_div(&base_m - int(1), base_m.clone())?;
            }
            Ok(acc)
        }
    }
}

/// W(z, beta) with the two printed forms cross-asserted.
pub fn koornwinder_weight(
    point: &FatHookCoord,
    shift: DeformedShift,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    let a = koornwinder_weight_sw1(point, shift, m, n, k, p, q)?;
    let b = koornwinder_weight_explicit(point, shift, m, n, k, p, q)?;
    if a != b {
        return Err(Error::Other(format!(
            "Koornwinder weight forms disagree at {shift:?}: {a} vs {b}"
        )));
    }
    Ok(a)
}

/// The row moved by a hook shift, as a shift of the infinite theory:
/// +-eps_i moves a box in row i, +-delta_j in row lambda'_j (+1 on adds).
pub fn infinite_row_shift(lam: &Partition, shift: DeformedShift) -> crate::pieri::SignedShift {
    match shift {
        DeformedShift::Eps(i, sign) => crate::pieri::SignedShift { row: i, sign },
        DeformedShift::Delta(j, sign) => {
            let col = lam.conjugate().part(j) as usize;
            let row = if sign > 0 { col + 1 } else { col };
            crate::pieri::SignedShift { row, sign }
        }
    }
}

/// The deformed Pieri coefficient V(lambda, beta), computed three ways and
/// cross-asserted: the simplified root-system form and the Upsilon-ratio
/// definition (both as exact limits along the shift direction, which is
/// where the printed formulas need their regularization at some lattice
/// points), and the infinite-variable r = 1 coefficient of the moved row on
/// the deformed locus, whose restriction the deformed identity is.
pub fn deformed_pieri_coeff(
    lam: &Partition,
    shift: DeformedShift,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    if apply_deformed_shift(lam, shift, m, n).is_none() {
        return Err(Error::InadmissibleShift(
            format!("{shift:?}"),
            format!("{lam:?}"),
        ));
    }
    let h = -(k * int(m as i64)) - int(n as i64) - p / int(2) - q;
    let row_shift = infinite_row_shift(lam, shift);
    let restricted = crate::pieri::pieri_coeff_r1_corollary(lam, row_shift, k, p, q, &h)?;
    let rho = rho_deformed(m, n, k, p, q);
    let spectral = fat_hook_sub(&chi(lam, m, n)?, &rho);
    let beta = shift_root(shift, m, n);
    let simplified = sw1_factors(&spectral, Some(&beta), &beta, m, n, k, p, q)?.limit()?;
    let upsilon = deformed_pieri_coeff_upsilon(lam, shift, m, n, k, p, q)?;
    if simplified != restricted || upsilon != restricted {
        return Err(Error::Other(format!(
            "deformed Pieri coefficient forms disagree at {lam:?}, {shift:?}: \
             simplified {simplified}, upsilon {upsilon}, restricted {restricted}"
        )));
    }
    Ok(restricted)
}

/// One telescoped pair Upsilon(lambda+beta, alpha) / Upsilon(lambda, alpha)
/// = Gamma(A+c-m) Gamma(A) / (Gamma(A+c) Gamma(A-m)) with c = (beta, alpha_vee),
/// pushed into a factor product as linear functions of the deformation t.
fn push_upsilon_pair(
    prod: &mut FactorProduct,
    a: &Lin,
    c: &Rat,
    m_alpha: &Rat,
) -> Result<()> {
    if crate::rational::is_integer(c) {
        let c = crate::rational::to_i64(c)
            .ok_or_else(|| Error::DegenerateFactor("offset overflow".into()))?;
        if c >= 0 {
            for j in 0..c {
                prod.push_num(a.add_const(&(int(j) - m_alpha)));
                prod.push_den(a.add_const(&int(j)));
            }
        } else {
            for j in 0..-c {
                prod.push_num(a.add_const(&(int(c + j))));
                prod.push_den(a.add_const(&(int(c + j) - m_alpha)));
            }
        }
        Ok(())
    } else if crate::rational::is_integer(m_alpha) {
        let m = crate::rational::to_i64(m_alpha)
            .ok_or_else(|| Error::DegenerateFactor("multiplicity overflow".into()))?;
        if m >= 0 {
            for s in 1..=m {
                prod.push_num(a.add_const(&int(-s)));
                prod.push_den(a.add_const(&(c - int(s))));
            }
        } else {
            for j in 0..-m {
                prod.push_num(a.add_const(&(c + int(j))));
                prod.push_den(a.add_const(&int(j)));
            }
        }
        Ok(())
    } else {
        Err(Error::DegenerateFactor(format!(
            "neither the offset {c} nor the multiplicity {m_alpha} is an integer"
        )))
    }
}

/// V(lambda, beta) = (beta,beta)^{-1} prod_{<alpha,beta> > 0}
/// Upsilon(lambda+beta, alpha) / Upsilon(lambda, alpha), as an exact limit
/// along the shift direction.
pub fn deformed_pieri_coeff_upsilon(
    lam: &Partition,
    shift: DeformedShift,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    if apply_deformed_shift(lam, shift, m, n).is_none() {
        return Err(Error::InadmissibleShift(
            format!("{shift:?}"),
            format!("{lam:?}"),
        ));
    }
    let beta = shift_root(shift, m, n);
    let norm = beta.deformed_norm(k);
    nonzero(&norm, "(beta, beta)")?;
    let rho = rho_deformed(m, n, k, p, q);
    let spectral = fat_hook_sub(&chi(lam, m, n)?, &rho);
    let mut prod = FactorProduct::new();
    prod.scale(&norm.recip());
    for alpha in all_roots(m, n) {
        if alpha.standard_pair(&beta) <= 0 {
            continue;
        }
        let a = covector_pair_lin(&alpha, &spectral, &beta, k)?
            .add_const(&(-multiplicity_half(&alpha, k, p, q) / int(2)));
        let c = alpha.covector_pair_root(&beta, k)?;
        push_upsilon_pair(&mut prod, &a, &c, &multiplicity(&alpha, k, p, q))?;
    }
    prod.limit()
}

/// Checks the deformed Pieri identity exactly as polynomials:
/// 2 (sum u + k^{-1} sum v) J_lambda / J_lambda(0) =
/// sum_beta V(lambda,beta) [ J_{lambda+beta}/J_{lambda+beta}(0) - J_lambda/J_lambda(0) ].
pub fn verify_deformed_pieri(
    lam: &Partition,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<bool> {
    let sj = super_jacobi(lam, m, n, k, p, q)?;
    let sj0 = sj.constant_term();
    nonzero(&sj0, "J_lambda(0,0)")?;
    let p1 = crate::symfunc::power_sum(1).expand_deformed(m, n, k)?;
    let lhs = p1.mul(&sj)?.scale(&(int(2) / &sj0));
    let mut rhs = MultiPoly::zero(crate::multipoly::deformed_vars(m, n));
    let normalized = sj.scale(&sj0.clone().recip());
    for shift in admissible_deformed_shifts(lam, m, n) {
        let v = deformed_pieri_coeff(lam, shift, m, n, k, p, q)?;
        let target = apply_deformed_shift(lam, shift, m, n).expect("admissible");
        let tj = super_jacobi(&target, m, n, k, p, q)?;
        let tj0 = tj.constant_term();
        nonzero(&tj0, "J_{lambda+beta}(0,0)")?;
        let moved = tj.scale(&tj0.recip()).sub(&normalized)?;
        rhs = rhs.add(&moved.scale(&v))?;
    }
    Ok(lhs == rhs)
}

/// Applies the Koornwinder operator in the spectral variable:
/// sum_beta W(chi(lambda) - rho, beta) (g(lambda + beta) - g(lambda)).
pub fn koornwinder_apply(
    g: &BTreeMap<Partition, Rat>,
    lam: &Partition,
    m: usize,
    n: usize,
    k: &Rat,
    p: &Rat,
    q: &Rat,
) -> Result<Rat> {
    let rho = rho_deformed(m, n, k, p, q);
    let spectral = fat_hook_sub(&chi(lam, m, n)?, &rho);
    let g_lam = g
        .get(lam)
        .ok_or_else(|| Error::Precondition(format!("g undefined at {lam:?}")))?;
    let _ = spectral;
    let mut total = Rat::zero();
    for shift in admissible_deformed_shifts(lam, m, n) {
        let target = apply_deformed_shift(lam, shift, m, n).expect("admissible");
        let g_target = g
            .get(&target)
            .ok_or_else(|| Error::Precondition(format!("g undefined at {target:?}")))?;
        // W at the spectral point, in its regularized reading: the deformed
        // Pieri coefficient.
        let w = deformed_pieri_coeff(lam, shift, m, n, k, p, q)?;
        total += w * (g_target - g_lam);
    }
    Ok(total)
}

/// Deformed interpolation values, realized through restriction: the value of
/// the deformed interpolation polynomial at chi(mu) equals the stable value
/// of the infinite one at mu.
pub fn deformed_interpolation_value(lam: &Partition, mu: &Partition, k: &Rat, h: &Rat) -> Rat {
    interpolation_value(lam, mu, k, h)
}

/// The two-block Bernoulli generator of the restricted shifted algebra.
pub fn bernoulli_gen_deformed(
    l: usize,
    pt: &FatHookCoord,
    m: usize,
    n: usize,
    k: &Rat,
    h: &Rat,
) -> Rat {
    let mut total = Rat::zero();
    for i in 1..=m {
        let base = h + int(n as i64) + k * int(i as i64) + rat(1, 2);
        total += bernoulli_even(l, &(&pt.w[i - 1] + &base)) - bernoulli_even(l, &base);
    }
    let kinv = k.clone().recip();
    let mut block = Rat::zero();
    for j in 1..=n {
        let base = &kinv * h + &kinv * int(j as i64) - &kinv / int(2) + int(1);
        block += bernoulli_even(l, &(&pt.z[j - 1] + &base)) - bernoulli_even(l, &base);
    }
    total + pow(k, 2 * l as i64 - 1) * block
}
