//! Boundedness of `π_{J,v}`: the degree criterion, classification of
//! bounded one-dimensional representations, the conjectural value of the
//! bound, and empirical searches over balls in the affine Weyl group.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::heckemod::{HeckeRep, RepMatrix};
use crate::jgeom::JContext;
use crate::jparam::{letter_form, JParamSystem, SymMono, WeightFunction};
use crate::laurent::{factor_product_degree, SignedQMonomial};
use crate::paths::Word;
use crate::rootdata::{unit, Coweight};
use crate::weyl::{AffineWeyl, ExtAffineElt};

/// `form · (a, b, c) ≤ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearConstraint {
    pub form: [i64; 3],
}

impl LinearConstraint {
    pub fn holds(&self, abc: [i64; 3]) -> bool {
        self.form.iter().zip(abc).map(|(f, x)| f * x).sum::<i64>() <= 0
    }

    pub fn is_trivial(&self) -> bool {
        self.form.iter().all(|&f| f <= 0)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, x) in self.form.iter().zip(['a', 'b', 'c']) {
            if *c == 0 {
                continue;
            }
            if out.is_empty() {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push(x);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} ≤ 0")
    }
}

/// `deg v^{ω_j}` for `j ∈ J` as linear forms in `(a, b, c)`.
pub fn bounded_constraints(ctx: &JContext, v: &JParamSystem) -> Vec<LinearConstraint> {
    ctx.j
        .iter()
        .map(|&j| LinearConstraint { form: v.v_power_sym(ctx, &unit(ctx.rank(), j - 1)).degree_form() })
        .collect()
}

/// `deg v^{ω_j} ≤ 0` for all `j ∈ J`.
pub fn is_bounded(ctx: &JContext, v: &JParamSystem) -> bool {
    ctx.j.iter().all(|&j| v.v_power(ctx, &unit(ctx.rank(), j - 1)).q_exp <= 0)
}

/// One sign choice of a one-dimensional representation (`J = I`) and the
/// region of weights on which it is bounded.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub label: String,
    /// `ψ(T_j)` (and `v_{2α_n}`) as symbolic monomials, keyed like the degrees of freedom.
    pub values: Vec<(String, String)>,
    pub constraints: Vec<LinearConstraint>,
}

impl ClassificationRow {
    pub fn holds(&self, abc: [i64; 3]) -> bool {
        self.constraints.iter().all(|c| c.holds(abc))
    }
}

/// Bounded one-dimensional representations of the affine Hecke algebra of a
/// root system, symbolic in the weights.
pub fn classify(label: &str) -> Result<Vec<ClassificationRow>> {
    let aw = AffineWeyl::from_label(label)?;
    let n = aw.rank();
    let all: Vec<usize> = (1..=n).collect();
    let ctx = JContext::new(aw, &all)?;
    let w = WeightFunction::equal(&ctx.aw);
    let mut rows = Vec::new();
    for v in JParamSystem::enumerate(&ctx, &w) {
        let values = v
            .dofs
            .iter()
            .map(|d| {
                let m: SymMono = if d.key == "2n" {
                    let a2: Vec<i64> = unit(n, n - 1).iter().map(|x| 2 * x).collect();
                    v.v_sym(&ctx, &a2)
                } else {
                    let j: usize = d.key.parse().expect("node key");
                    v.v_pair_sym(&ctx, &unit(n, j - 1))
                };
                (d.key.clone(), m.to_string())
            })
            .collect();
        let mut constraints: Vec<LinearConstraint> = Vec::new();
        for c in bounded_constraints(&ctx, &v) {
            if !c.is_trivial() && !constraints.contains(&c) {
                constraints.push(c);
            }
        }
        rows.push(ClassificationRow { label: v.label(), values, constraints });
    }
    Ok(rows)
}

/// `L(w_0)`.
pub fn l_w0(ctx: &JContext, w: &WeightFunction) -> i64 {
    let aw = &ctx.aw;
    let all: Vec<usize> = (1..=aw.rank()).collect();
    aw.finite_word(&aw.longest_in(&all)).iter().map(|&i| w.weight(i)).sum()
}

/// Exponent of `q_α` as a linear form in `(a, b, c)`.
fn q_alpha_form(ctx: &JContext, alpha: &[i64]) -> [i64; 3] {
    let rs = ctx.rs();
    let n = rs.rank;
    let node = |i: usize| letter_form(ctx.aw.letter[i]);
    if !rs.reduced {
        if rs.half_is_root(alpha) {
            return node(0);
        }
        if rs.double_is_root(alpha) {
            let (x, y) = (node(n), node(0));
            return [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
        }
    }
    let nm = rs.norm(alpha);
    let i = (1..=n).find(|&i| rs.norm(&unit(n, i - 1)) == nm && !rs.double_is_root(&unit(n, i - 1))).expect("length class");
    node(i)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjecturalBound {
    pub value: i64,
    /// Factors `1 − m` with `m = 1`, omitted from the product.
    pub omitted_numerator: usize,
    pub omitted_denominator: usize,
    /// Some factor vanishes at these weights without vanishing identically in
    /// `(a, b, c)`: a borderline weight family.
    pub degenerate: bool,
}

/// `L(w_0) − ½ deg ∏'_{α ∈ Φ} (1 − q_{α/2}^{-1} v^{α^∨}) / (1 − q_{α/2}^{-1} q_α^{-2} v^{α^∨})`.
pub fn conjectural_bound(ctx: &JContext, v: &JParamSystem) -> Result<ConjecturalBound> {
    if !is_bounded(ctx, v) {
        return Err(Error::Precondition("the representation is not bounded".into()));
    }
    let rs = ctx.rs();
    let w = &v.weights;
    let mut num = Vec::new();
    let mut den = Vec::new();
    let mut identically = 0;
    for alpha in rs.all_roots() {
        let cv: Coweight = rs.coroot(&alpha)?;
        let va = v.v_power_sym(ctx, &cv);
        let half = if rs.half_is_root(&alpha) {
            let h: Vec<i64> = alpha.iter().map(|x| x / 2).collect();
            q_alpha_form(ctx, &h)
        } else {
            [0; 3]
        };
        let qa = q_alpha_form(ctx, &alpha);
        let top = SymMono { sign: va.sign, form: std::array::from_fn(|k| va.form[k] - half[k]) };
        let bottom = SymMono { sign: va.sign, form: std::array::from_fn(|k| top.form[k] - 2 * qa[k]) };
        for m in [top, bottom] {
            if m.sign == 1 && m.form == [0; 3] {
                identically += 1;
            }
        }
        num.push(top.eval(w.abc));
        den.push(bottom.eval(w.abc));
    }
    let vanishing = |m: &&SignedQMonomial| m.sign == 1 && m.q_exp == 0;
    let omitted_numerator = num.iter().filter(vanishing).count();
    let omitted_denominator = den.iter().filter(vanishing).count();
    let d = factor_product_degree(&num, &den);
    let twice = 2 * l_w0(ctx, w) - d;
    if twice % 2 != 0 {
        return Err(Error::HalfIntegerBound(twice));
    }
    Ok(ConjecturalBound {
        value: twice / 2,
        omitted_numerator,
        omitted_denominator,
        degenerate: omitted_numerator + omitted_denominator > identically,
    })
}

/// An element of the ball together with its canonical reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognised {
    pub element: ExtAffineElt,
    pub word: Word,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub radius: usize,
    /// Largest entry degree over the ball; `None` only for the zero representation.
    pub max_degree: Option<i64>,
    /// Largest entry degree per shell.
    pub shell_max: Vec<Option<i64>>,
    /// Elements attaining `max_degree`.
    pub arg_set: Vec<Recognised>,
    pub conjectured_bound: Option<i64>,
    /// The running maximum is the same on each of the last `STABLE_SHELLS` shells.
    pub stabilized: bool,
}

pub const STABLE_SHELLS: usize = 3;

/// Largest entry degree of `π(T_w)` over `ℓ(w) ≤ radius`, `w` in the affine
/// Weyl group (and `wσ` for every `σ` when `include_sigma`).
pub fn empirical_search(rep: &HeckeRep, radius: usize, include_sigma: bool) -> BoundReport {
    let aw = &rep.ctx.aw;
    let shells = rep.tw_ball(radius);
    let deg = |m: &RepMatrix| m.max_degree().as_int();
    let shell_max: Vec<Option<i64>> = shells.iter().map(|s| s.iter().filter_map(|(_, m)| deg(m)).max()).collect();
    let max_degree = shell_max.iter().flatten().copied().max();
    let mut arg_set = Vec::new();
    if let Some(a) = max_degree {
        let n_sigma = if include_sigma { aw.sigma_group().len() } else { 1 };
        for shell in &shells {
            for (w, m) in shell {
                if deg(m) == Some(a) {
                    let (letters, _) = aw.reduced_word(w);
                    for s in 0..n_sigma {
                        let element = w.mul(&aw.sigma_group()[s].as_element);
                        arg_set.push(Recognised { element, word: Word::with_sigma(letters.clone(), s) });
                    }
                }
            }
        }
    }
    let mut running = Vec::with_capacity(shell_max.len());
    let mut cur: Option<i64> = None;
    for s in &shell_max {
        cur = cur.max(*s);
        running.push(cur);
    }
    let stabilized = running.len() >= STABLE_SHELLS && running[running.len() - STABLE_SHELLS..].iter().all(|x| *x == cur);
    let conjectured_bound = conjectural_bound(rep.ctx, rep.v).ok().map(|c| c.value);
    BoundReport { radius, max_degree, shell_max, arg_set, conjectured_bound, stabilized }
}

/// `sp_{q^{-1}=0}(q^{-a} π(T_w))`.
pub fn leading_matrix(rep: &HeckeRep, w: &ExtAffineElt, a: i64) -> Result<RepMatrix> {
    let m = rep.matrix_of_tw(w).leading(a)?;
    if m.is_zero() {
        return Err(Error::Precondition(format!("{w:?} is not recognised at degree {a}")));
    }
    Ok(m)
}

/// Whether `w` in the (non-extended) affine Weyl group has exactly one reduced word.
pub fn unique_reduced_expression(aw: &AffineWeyl, w: &ExtAffineElt) -> bool {
    let mut x = w.clone();
    loop {
        let descents: Vec<usize> = (0..=aw.rank()).filter(|&i| aw.is_right_descent(&x, i)).collect();
        match descents.len() {
            0 => return true,
            1 => x = x.mul(aw.gen(descents[0])),
            _ => return false,
        }
    }
}

const RANK_PRIME: i64 = 2_147_483_647;

/// Rank over `ℚ` of matrices over `ℤ[q^{±1}, ζ^{±1}]`, each flattened to its
/// integer coordinates in the basis `q^d ζ^k E_{ij}`. Computed modulo a large prime,
/// which can only underestimate; full rank is therefore a proof of
/// independence.
pub fn integer_rank(mats: &[RepMatrix]) -> usize {
    use std::collections::BTreeMap;
    let mut coords: BTreeMap<(usize, usize, i64, Vec<i64>), usize> = BTreeMap::new();
    let mut rows: Vec<BTreeMap<usize, i64>> = Vec::new();
    for m in mats {
        let mut row = BTreeMap::new();
        for (r, line) in m.entries.iter().enumerate() {
            for (c, e) in line.iter().enumerate() {
                for ((q, z), coef) in e.terms() {
                    let next = coords.len();
                    let k = *coords.entry((r, c, *q, z.clone())).or_insert(next);
                    let v = (coef % num_bigint::BigInt::from(RANK_PRIME)).to_string().parse::<i64>().unwrap();
                    *row.entry(k).or_insert(0) = (row.get(&k).copied().unwrap_or(0) + v).rem_euclid(RANK_PRIME);
                }
            }
        }
        rows.push(row);
    }
    let ncols = coords.len();
    let mut dense: Vec<Vec<i64>> =
        rows.into_iter().map(|r| (0..ncols).map(|k| r.get(&k).copied().unwrap_or(0)).collect()).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..dense.len()).find(|&i| dense[i][col] != 0) else { continue };
        dense.swap(rank, p);
        let inv = mod_pow(dense[rank][col], RANK_PRIME - 2);
        for i in 0..dense.len() {
            if i != rank && dense[i][col] != 0 {
                let f = dense[i][col] * inv % RANK_PRIME;
                for k in col..ncols {
                    dense[i][k] = (dense[i][k] - f * dense[rank][k] % RANK_PRIME).rem_euclid(RANK_PRIME);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1i64;
    b = b.rem_euclid(RANK_PRIME);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % RANK_PRIME;
        }
        b = b * b % RANK_PRIME;
        e >>= 1;
    }
    r
}

/// `π(X^{Nλ})` entry degrees for `N = 1..=steps`, used to witness growth of
/// unbounded representations.
pub fn translation_degrees(rep: &HeckeRep, lambda: &[i64], steps: i64) -> Vec<Option<i64>> {
    (1..=steps)
        .map(|k| {
            let l: Vec<i64> = lambda.iter().map(|x| k * x).collect();
            rep.matrix_of_x(&l).max_degree().as_int()
        })
        .collect()
}
