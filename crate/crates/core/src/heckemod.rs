//! The representation `π_{J,v}` as matrices over `ℤ[q^{±1}][ζ_J^{±1}]`.
//!
//! Matrices act on the right: row `f` holds the coordinates of `b_f · h`, so
//! `π(h h') = π(h) π(h')`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jgeom::{FundamentalDomain, JContext};
use crate::jparam::JParamSystem;
use crate::laurent::{DegreeValue, QLaurent, SignedQMonomial};
use crate::paths::{self, JFoldedPath, Word};
use crate::rootdata::{dot, unit, CartanType, Coweight};
use crate::weyl::ExtAffineElt;

/// Dense square matrix of Laurent polynomials with a fixed ζ-arity.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct RepMatrix {
    pub dim: usize,
    pub arity: usize,
    pub entries: Vec<Vec<QLaurent>>,
}

impl RepMatrix {
    pub fn zero(dim: usize, arity: usize) -> RepMatrix {
        RepMatrix { dim, arity, entries: vec![vec![QLaurent::zero(arity); dim]; dim] }
    }

    pub fn identity(dim: usize, arity: usize) -> RepMatrix {
        RepMatrix::scalar(dim, &QLaurent::one(arity))
    }

    pub fn scalar(dim: usize, c: &QLaurent) -> RepMatrix {
        let mut m = RepMatrix::zero(dim, c.arity());
        for i in 0..dim {
            m.entries[i][i] = c.clone();
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &QLaurent {
        &self.entries[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(QLaurent::is_zero)
    }

    pub fn scale(&self, c: &QLaurent) -> RepMatrix {
        let entries = self.entries.iter().map(|row| row.iter().map(|e| e * c).collect()).collect();
        RepMatrix { dim: self.dim, arity: self.arity, entries }
    }

    pub fn pow(&self, k: u32) -> RepMatrix {
        (0..k).fold(RepMatrix::identity(self.dim, self.arity), |acc, _| &acc * self)
    }

    /// Largest q-degree over all entries.
    pub fn max_degree(&self) -> DegreeValue {
        self.entries.iter().flatten().map(QLaurent::q_degree).max().unwrap_or(DegreeValue::MinusInfinity)
    }

    /// Coefficient of `q^a` in every entry.
    pub fn leading(&self, a: i64) -> Result<RepMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.leading_part(a)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RepMatrix { dim: self.dim, arity: self.arity, entries })
    }

    /// `D_l · self · D_r^{-1}` for diagonal ζ-monomial matrices.
    fn conjugate_diag(&self, left: &[Vec<i64>], right: &[Vec<i64>]) -> RepMatrix {
        let mut out = self.clone();
        for (r, row) in out.entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                if !e.is_zero() {
                    let dz: Vec<i64> = left[r].iter().zip(&right[c]).map(|(a, b)| a - b).collect();
                    *e = e.mul_monomial(1, 0, &dz);
                }
            }
        }
        out
    }
}

impl fmt::Debug for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RepMatrix {}x{} [", self.dim, self.dim)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a RepMatrix> for &'a RepMatrix {
    type Output = RepMatrix;
    fn mul(self, o: &'a RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let n = self.dim;
        let entries = self
            .entries
            .par_iter()
            .map(|row| {
                let mut out = vec![QLaurent::zero(self.arity); n];
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (c, b) in o.entries[k].iter().enumerate() {
                        if !b.is_zero() {
                            out[c] = &out[c] + &(a * b);
                        }
                    }
                }
                out
            })
            .collect();
        RepMatrix { dim: n, arity: self.arity, entries }
    }
}

impl<'a> Add<&'a RepMatrix> for &'a RepMatrix {
    type Output = RepMatrix;
    fn add(self, o: &'a RepMatrix) -> RepMatrix {
        let entries =
            self.entries.iter().zip(&o.entries).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect();
        RepMatrix { dim: self.dim, arity: self.arity, entries }
    }
}

impl<'a> Sub<&'a RepMatrix> for &'a RepMatrix {
    type Output = RepMatrix;
    fn sub(self, o: &'a RepMatrix) -> RepMatrix {
        let entries =
            self.entries.iter().zip(&o.entries).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect()).collect();
        RepMatrix { dim: self.dim, arity: self.arity, entries }
    }
}

/// `π_{J,v}` with respect to the basis indexed by a fundamental domain.
pub struct HeckeRep<'a> {
    pub ctx: &'a JContext,
    pub v: &'a JParamSystem,
    pub domain: &'a FundamentalDomain,
    gens: Vec<RepMatrix>,
    gens_inv: Vec<RepMatrix>,
    sigmas: Vec<RepMatrix>,
}

impl<'a> HeckeRep<'a> {
    pub fn new(ctx: &'a JContext, v: &'a JParamSystem, domain: &'a FundamentalDomain) -> HeckeRep<'a> {
        let n = ctx.rank();
        let wj = ctx.wj_reps();
        // Row f of the change of basis: b_f = ζ^{h(f)} m_{g(f)}.
        let heights: Vec<Vec<i64>> = domain.heights.iter().map(|h| ctx.zeta_exponent(h)).collect();
        let rebase = |m: RepMatrix| -> RepMatrix {
            let mut out = RepMatrix::zero(m.dim, m.arity);
            for (r, &gr) in domain.g_index.iter().enumerate() {
                for (c, &gc) in domain.g_index.iter().enumerate() {
                    out.entries[r][c] = m.entries[gr][gc].clone();
                }
            }
            out.conjugate_diag(&heights, &heights)
        };
        let arity = ctx.zeta_arity();
        let mut gens = Vec::with_capacity(n + 1);
        let mut gens_inv = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let m = rebase(wj_basis_generator(ctx, v, i));
            let qi = QLaurent::q_minus_qinv(arity, v.weights.weight(i));
            gens_inv.push(&m - &RepMatrix::scalar(wj.len(), &qi));
            gens.push(m);
        }
        let sigmas = (0..ctx.aw.sigma_group().len()).map(|s| rebase(wj_basis_sigma(ctx, s))).collect();
        HeckeRep { ctx, v, domain, gens, gens_inv, sigmas }
    }

    pub fn dim(&self) -> usize {
        self.domain.len()
    }

    pub fn arity(&self) -> usize {
        self.ctx.zeta_arity()
    }

    pub fn identity(&self) -> RepMatrix {
        RepMatrix::identity(self.dim(), self.arity())
    }

    /// `q_i − q_i^{-1}`.
    pub fn q_diff(&self, i: usize) -> QLaurent {
        QLaurent::q_minus_qinv(self.arity(), self.v.weights.weight(i))
    }

    /// `π(T_i)` for `i ∈ {0} ∪ I`.
    pub fn gen_matrix(&self, i: usize) -> &RepMatrix {
        &self.gens[i]
    }

    pub fn gen_inverse(&self, i: usize) -> &RepMatrix {
        &self.gens_inv[i]
    }

    /// `π(T_σ)` for the `s`-th element of the diagram automorphism group.
    pub fn sigma_matrix(&self, s: usize) -> &RepMatrix {
        &self.sigmas[s]
    }

    /// Product of generator matrices along a word.
    pub fn matrix_of_word(&self, word: &Word) -> RepMatrix {
        let mut m = self.identity();
        for &i in &word.letters {
            m = &m * &self.gens[i];
        }
        if word.sigma != 0 {
            m = &m * &self.sigmas[word.sigma];
        }
        m
    }

    /// `π(T_w)` along the canonical reduced word.
    pub fn matrix_of_tw(&self, w: &ExtAffineElt) -> RepMatrix {
        let (letters, sigma) = self.ctx.aw.reduced_word(w);
        self.matrix_of_word(&Word::with_sigma(letters, sigma))
    }

    /// `π(T_w)` as a sum over J-folded paths.
    pub fn matrix_via_paths(&self, w: &ExtAffineElt) -> Result<RepMatrix> {
        let (letters, sigma) = self.ctx.aw.reduced_word(w);
        self.matrix_via_paths_word(&Word::with_sigma(letters, sigma))
    }

    pub fn matrix_via_paths_word(&self, word: &Word) -> Result<RepMatrix> {
        self.matrix_from_paths(&paths_by_row(self.ctx, self.domain, word)?)
    }

    /// Sums path contributions; `rows[r]` holds the paths starting at the
    /// `r`-th domain element. The enumeration does not depend on `v`, so one
    /// enumeration serves every parameter system on the same domain.
    pub fn matrix_from_paths(&self, rows: &[Vec<JFoldedPath>]) -> Result<RepMatrix> {
        let mut m = RepMatrix::zero(self.dim(), self.arity());
        for (r, ps) in rows.iter().enumerate() {
            for p in ps {
                let (wt, f) = p.wt_theta(self.ctx, self.domain)?;
                let z = self.ctx.zeta_exponent(&wt);
                let add = p.mass(self.ctx, self.v).mul_monomial(1, 0, &z);
                m.entries[r][f] = &m.entries[r][f] + &add;
            }
        }
        Ok(m)
    }

    /// `π(X_w) = ∏ π(T_{i_k})^{ε_k} π(T_σ)`.
    pub fn matrix_of_xw(&self, w: &ExtAffineElt) -> RepMatrix {
        let aw = &self.ctx.aw;
        let (letters, sigma) = aw.reduced_word(w);
        let mut x = aw.identity();
        let mut m = self.identity();
        for &i in &letters {
            let g = if aw.crossing_sign(&x, i) > 0 { &self.gens[i] } else { &self.gens_inv[i] };
            m = &m * g;
            x = x.mul(aw.gen(i));
        }
        if sigma != 0 {
            m = &m * &self.sigmas[sigma];
        }
        m
    }

    /// `π(X^λ)`.
    pub fn matrix_of_x(&self, lambda: &[i64]) -> RepMatrix {
        self.matrix_of_xw(&ExtAffineElt::translation(lambda))
    }

    fn is_bc_last(&self, i: usize) -> bool {
        self.ctx.rs().kind == CartanType::BC && i == self.ctx.rank()
    }

    /// `α_i^∨` in ω-coordinates.
    fn coroot(&self, i: usize) -> Coweight {
        let rs = self.ctx.rs();
        rs.coroot(&unit(rs.rank, i - 1)).expect("simple roots are roots")
    }

    /// `π(τ_i)` for `i ∈ I`.
    pub fn matrix_of_tau(&self, i: usize) -> RepMatrix {
        let a = self.arity();
        let cv = self.coroot(i);
        let one = self.identity();
        if !self.is_bc_last(i) {
            let neg: Coweight = cv.iter().map(|c| -c).collect();
            let lhs = &(&one - &self.matrix_of_x(&neg)) * &self.gens[i];
            return &lhs - &RepMatrix::scalar(self.dim(), &self.q_diff(i));
        }
        let half: Coweight = cv.iter().map(|c| -c / 2).collect();
        let (wn, w0) = (self.v.weights.weight(i), self.v.weights.weight(0));
        if wn != w0 {
            let neg: Coweight = cv.iter().map(|c| -c).collect();
            let lhs = &(&one - &self.matrix_of_x(&neg)) * &self.gens[i];
            let tail = &RepMatrix::scalar(self.dim(), &self.q_diff(i))
                + &self.matrix_of_x(&half).scale(&QLaurent::q_minus_qinv(a, w0));
            &lhs - &tail
        } else {
            let lhs = &(&one - &self.matrix_of_x(&half)) * &self.gens[i];
            &lhs - &RepMatrix::scalar(self.dim(), &self.q_diff(i))
        }
    }

    /// Right hand side of the closed formula for `π(τ_i)^2`.
    pub fn tau_square_rhs(&self, i: usize) -> RepMatrix {
        let a = self.arity();
        let cv = self.coroot(i);
        let one = self.identity();
        let wi = self.v.weights.weight(i);
        let qi2 = QLaurent::q_pow(a, 2 * wi);
        let factor = |coeff: QLaurent, lam: &[i64]| -> RepMatrix { &one + &self.matrix_of_x(lam).scale(&coeff) };
        let pos: Coweight = cv.clone();
        let neg: Coweight = cv.iter().map(|c| -c).collect();
        if !self.is_bc_last(i) {
            let c = QLaurent::monomial(a, -1, -2 * wi, &vec![0; a]);
            return (&factor(c.clone(), &neg) * &factor(c, &pos)).scale(&qi2);
        }
        let hpos: Coweight = cv.iter().map(|c| c / 2).collect();
        let hneg: Coweight = cv.iter().map(|c| -c / 2).collect();
        let w0 = self.v.weights.weight(0);
        if wi != w0 {
            let c1 = QLaurent::monomial(a, -1, -w0 - wi, &vec![0; a]);
            let c2 = QLaurent::monomial(a, 1, w0 - wi, &vec![0; a]);
            let m = &(&factor(c1.clone(), &hneg) * &factor(c2.clone(), &hneg))
                * &(&factor(c1, &hpos) * &factor(c2, &hpos));
            m.scale(&qi2)
        } else {
            let c = QLaurent::monomial(a, -1, -2 * wi, &vec![0; a]);
            (&factor(c.clone(), &hneg) * &factor(c, &hpos)).scale(&qi2)
        }
    }

    /// Both sides of the Bernstein–Lusztig relation for `T_i X^λ`.
    pub fn bernstein_lusztig_sides(&self, i: usize, lambda: &[i64]) -> (RepMatrix, RepMatrix) {
        let rs = self.ctx.rs();
        let cv = self.coroot(i);
        let k = dot(lambda, &unit(rs.rank, i - 1));
        let si: Coweight = lambda.iter().zip(&cv).map(|(l, c)| l - k * c).collect();
        let lhs = &self.gens[i] * &self.matrix_of_x(lambda);
        let mut rhs = &self.matrix_of_x(&si) * &self.gens[i];
        // (X^λ − X^{s_iλ}) / (1 − X^{−α_i^∨}) as a finite geometric sum.
        let mut quot = RepMatrix::zero(self.dim(), self.arity());
        if k > 0 {
            for j in 0..k {
                let mu: Coweight = lambda.iter().zip(&cv).map(|(l, c)| l - j * c).collect();
                quot = &quot + &self.matrix_of_x(&mu);
            }
        } else {
            for j in 1..=-k {
                let mu: Coweight = lambda.iter().zip(&cv).map(|(l, c)| l + j * c).collect();
                quot = &quot - &self.matrix_of_x(&mu);
            }
        }
        let coeff = if self.is_bc_last(i) {
            let half: Coweight = cv.iter().map(|c| -c / 2).collect();
            &RepMatrix::scalar(self.dim(), &self.q_diff(i)) + &self.matrix_of_x(&half).scale(&self.q_diff(0))
        } else {
            RepMatrix::scalar(self.dim(), &self.q_diff(i))
        };
        rhs = &rhs + &(&coeff * &quot);
        (lhs, rhs)
    }

    /// `∏_{u ∈ W^J} (π(X^λ) − ψ(X^{uλ}))`, which vanishes when the weight
    /// spaces are as predicted.
    pub fn weight_annihilator(&self, lambda: &[i64]) -> RepMatrix {
        let x = self.matrix_of_x(lambda);
        let mut acc = self.identity();
        for u in self.ctx.wj_reps() {
            let (mono, z) = self.v.psi_x(self.ctx, &u.act_coweight(lambda));
            let ev = QLaurent::monomial(self.arity(), mono.sign as i64, mono.q_exp, &z);
            acc = &acc * &(&x - &RepMatrix::scalar(self.dim(), &ev));
        }
        acc
    }

    /// The eigenvalues `ψ(X^{uλ})` as `(sign, q-exponent, ζ-exponent)`.
    pub fn predicted_spectrum(&self, lambda: &[i64]) -> Vec<(SignedQMonomial, Vec<i64>)> {
        self.ctx.wj_reps().iter().map(|u| self.v.psi_x(self.ctx, &u.act_coweight(lambda))).collect()
    }

    /// `π(T_w)` for every `w` of the affine Weyl group with `ℓ(w) ≤ radius`,
    /// shell by shell, each obtained from a shorter element by one generator.
    pub fn tw_ball(&self, radius: usize) -> Vec<Vec<(ExtAffineElt, RepMatrix)>> {
        let aw = &self.ctx.aw;
        let mut known: HashMap<ExtAffineElt, RepMatrix> = HashMap::new();
        let e = aw.identity();
        known.insert(e.clone(), self.identity());
        let mut shells = vec![vec![(e, self.identity())]];
        for _ in 0..radius {
            let prev = shells.last().unwrap();
            let mut next: Vec<(ExtAffineElt, RepMatrix)> = Vec::new();
            let mut seen: HashMap<ExtAffineElt, ()> = HashMap::new();
            let mut cand = Vec::new();
            for (w, _) in prev {
                for i in 0..=aw.rank() {
                    let ws = w.mul(aw.gen(i));
                    if !known.contains_key(&ws) && seen.insert(ws.clone(), ()).is_none() {
                        cand.push((w.clone(), i, ws));
                    }
                }
            }
            cand.sort_by(|a, b| a.2.cmp(&b.2));
            let mats: Vec<RepMatrix> =
                cand.par_iter().map(|(w, i, _)| &known[w] * &self.gens[*i]).collect();
            for ((_, _, ws), m) in cand.into_iter().zip(mats) {
                known.insert(ws.clone(), m.clone());
                next.push((ws, m));
            }
            shells.push(next);
        }
        shells
    }

    /// Checks the defining relations of the extended affine Hecke algebra;
    /// returns the names of those that fail.
    pub fn check_relations(&self) -> Vec<String> {
        let aw = &self.ctx.aw;
        let n = aw.rank();
        let one = self.identity();
        let mut bad = Vec::new();
        for i in 0..=n {
            let t = &self.gens[i];
            if &(t * t) != &(&one + &t.scale(&self.q_diff(i))) {
                bad.push(format!("quadratic T_{i}"));
            }
            if &(t * &self.gens_inv[i]) != &one {
                bad.push(format!("inverse T_{i}"));
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let m = aw.coxeter[i][j];
                if m == 0 {
                    continue;
                }
                let (mut a, mut b) = (one.clone(), one.clone());
                for k in 0..m {
                    let (x, y) = if k % 2 == 0 { (i, j) } else { (j, i) };
                    a = &a * &self.gens[x];
                    b = &b * &self.gens[y];
                }
                if a != b {
                    bad.push(format!("braid T_{i} T_{j}"));
                }
            }
        }
        let sg = aw.sigma_group();
        for (s, d) in sg.iter().enumerate() {
            let inv = sg.iter().position(|e| e.as_element == d.as_element.inverse()).expect("group");
            for i in 0..=n {
                let lhs = &(&self.sigmas[s] * &self.gens[i]) * &self.sigmas[inv];
                if lhs != self.gens[d.node_perm[i]] {
                    bad.push(format!("T_σ{s} T_{i} T_σ{s}^-1"));
                }
            }
            for (t, e) in sg.iter().enumerate() {
                let prod = d.as_element.mul(&e.as_element);
                let k = sg.iter().position(|x| x.as_element == prod).expect("group");
                if &self.sigmas[s] * &self.sigmas[t] != self.sigmas[k] {
                    bad.push(format!("T_σ{s} T_σ{t}"));
                }
            }
        }
        bad
    }
}

/// `π(T_i)` in the basis `{m_u : u ∈ W^J}`.
fn wj_basis_generator(ctx: &JContext, v: &JParamSystem, i: usize) -> RepMatrix {
    let arity = ctx.zeta_arity();
    let wj = ctx.wj_reps();
    let aw = &ctx.aw;
    let mut m = RepMatrix::zero(wj.len(), arity);
    for (r, u) in wj.iter().enumerate() {
        let x = ExtAffineElt::finite(u.clone());
        let xs = x.mul(aw.gen(i));
        if ctx.in_wbbj(&xs) {
            let (wt, th) = ctx.decompose_wbbj(&xs).expect("member of 𝕎^J");
            let c = ctx.wj_index(&th).expect("θ^J lands in W^J");
            m.entries[r][c] = QLaurent::zeta(&ctx.zeta_exponent(&wt));
            if aw.crossing_sign(&x, i) < 0 {
                let qd = QLaurent::q_minus_qinv(arity, v.weights.weight(i));
                m.entries[r][r] = &m.entries[r][r] + &qd;
            }
        } else {
            let beta = aw.act_on_affine_root(&x, aw.simple_affine_root(i)).linear;
            m.entries[r][r] = v.v_pair(ctx, &beta).to_laurent(arity);
        }
    }
    m
}

/// `π(T_σ)` in the basis `{m_u : u ∈ W^J}`: `m_u ↦ ζ^{wt(uσ)} m_{θ^J(uσ)}`.
fn wj_basis_sigma(ctx: &JContext, s: usize) -> RepMatrix {
    let arity = ctx.zeta_arity();
    let wj = ctx.wj_reps();
    let sigma = &ctx.aw.sigma_group()[s].as_element;
    let mut m = RepMatrix::zero(wj.len(), arity);
    for (r, u) in wj.iter().enumerate() {
        let x = ExtAffineElt::finite(u.clone()).mul(sigma);
        let (wt, th) = ctx.decompose_wbbj(&x).expect("σ preserves 𝕎^J");
        let c = ctx.wj_index(&th).expect("θ^J lands in W^J");
        m.entries[r][c] = QLaurent::zeta(&ctx.zeta_exponent(&wt));
    }
    m
}

/// Errors unless the two matrices agree.
/// All J-folded paths of the given type, grouped by their starting domain element.
pub fn paths_by_row(ctx: &JContext, domain: &FundamentalDomain, word: &Word) -> Result<Vec<Vec<JFoldedPath>>> {
    domain.members.iter().map(|start| paths::enumerate(ctx, word, start, None)).collect()
}

pub fn ensure_equal(what: &str, a: &RepMatrix, b: &RepMatrix) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what}: matrices differ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jparam::WeightFunction;
    use rand::{Rng, SeedableRng};

    fn ctx(l: &str, j: &[usize]) -> JContext {
        JContext::from_label(l, j).unwrap()
    }

    #[test]
    fn cancellation_entry() {
        let c = ctx("A3", &[1]);
        let v = JParamSystem::all_negative(&c, &WeightFunction::equal(&c.aw));
        let dom = c.default_domain();
        let rep = HeckeRep::new(&c, &v, &dom);
        let w0 = c.aw.word_to_elt(&[3, 2, 3, 1, 2, 3], None);
        let a = c.zeta_arity();
        let want = &QLaurent::q_pow(a, -4) * &QLaurent::q_minus_qinv(a, 1).pow(2);
        assert_eq!(rep.matrix_of_tw(&w0).get(0, 0), &want);
        assert_eq!(rep.matrix_via_paths(&w0).unwrap().get(0, 0), &want);
        assert_eq!(want.q_degree(), DegreeValue::Int(-2));
    }

    #[test]
    fn one_dimensional_for_full_j() {
        let c = ctx("G2", &[1, 2]);
        let w = WeightFunction::new(&c.aw, 3, 2, 1).unwrap();
        let dom = c.default_domain();
        for v in JParamSystem::enumerate(&c, &w) {
            let rep = HeckeRep::new(&c, &v, &dom);
            assert_eq!(rep.dim(), 1);
            for j in 1..=2 {
                assert_eq!(rep.gen_matrix(j).get(0, 0), &v.psi_t(&c, j).to_laurent(0));
            }
            for lam in [[1, 0], [0, 1], [2, -1]] {
                let (mono, _) = v.psi_x(&c, &lam);
                assert_eq!(rep.matrix_of_x(&lam).get(0, 0), &mono.to_laurent(0));
            }
        }
    }

    #[test]
    fn relations_and_paths_agree() {
        for (l, j) in [("A2", vec![1]), ("C2", vec![2]), ("BC2", vec![2]), ("G2", vec![1]), ("A3", vec![1, 3])] {
            let c = ctx(l, &j);
            let w = WeightFunction::new(&c.aw, 3, 2, 1).unwrap();
            let dom = c.default_domain();
            for v in JParamSystem::enumerate(&c, &w) {
                let rep = HeckeRep::new(&c, &v, &dom);
                assert!(rep.check_relations().is_empty(), "{l} {:?}", rep.check_relations());
                for shell in rep.tw_ball(4) {
                    for (x, m) in shell {
                        assert_eq!(rep.matrix_via_paths(&x).unwrap(), m, "{l} {x:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_domain_paths() {
        let c = ctx("A2", &[1]);
        let v = JParamSystem::all_negative(&c, &WeightFunction::equal(&c.aw));
        let dom = c.sigma_domain().unwrap();
        let rep = HeckeRep::new(&c, &v, &dom);
        assert!(rep.check_relations().is_empty());
        for shell in rep.tw_ball(4) {
            for (x, m) in shell {
                assert_eq!(rep.matrix_via_paths(&x).unwrap(), m);
            }
        }
        let s = c.aw.rotation_sigma().unwrap();
        let sig = c.aw.sigma_group()[s].as_element.clone();
        assert_eq!(rep.matrix_via_paths(&sig).unwrap(), *rep.sigma_matrix(s));
    }

    #[test]
    fn translations() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for (l, j) in [("A2", vec![1]), ("C2", vec![1]), ("BC2", vec![]), ("BC2", vec![2]), ("G2", vec![2])] {
            let c = ctx(l, &j);
            let w = WeightFunction::new(&c.aw, 3, 1, 2).unwrap();
            let dom = c.default_domain();
            for v in JParamSystem::enumerate(&c, &w) {
                let rep = HeckeRep::new(&c, &v, &dom);
                assert_eq!(rep.matrix_of_x(&[0, 0]), rep.identity());
                let phi = c.aw.phi_coroot.clone();
                // T_0 = X^{φ^∨} T_{s_φ}^{-1}.
                let tsphi = rep.matrix_of_tw(&ExtAffineElt::finite(c.aw.gen(0).lin.clone()));
                assert_eq!(rep.gen_matrix(0) * &tsphi, rep.matrix_of_x(&phi));
                for _ in 0..6 {
                    let a: Vec<i64> = (0..2).map(|_| rng.gen_range(-2..=2)).collect();
                    let b: Vec<i64> = (0..2).map(|_| rng.gen_range(-2..=2)).collect();
                    let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                    assert_eq!(&rep.matrix_of_x(&a) * &rep.matrix_of_x(&b), rep.matrix_of_x(&ab));
                    for i in 1..=2 {
                        let (lhs, rhs) = rep.bernstein_lusztig_sides(i, &a);
                        assert_eq!(lhs, rhs, "{l} BL i={i} λ={a:?}");
                    }
                    assert!(rep.weight_annihilator(&a).is_zero());
                }
                // m_e · X^λ = v^λ ζ^λ m_e.
                let lam = vec![1, 1];
                let (mono, z) = v.psi_x(&c, &lam);
                let x = rep.matrix_of_x(&lam);
                assert_eq!(x.get(0, 0), &QLaurent::monomial(c.zeta_arity(), mono.sign as i64, mono.q_exp, &z));
                assert!((1..rep.dim()).all(|k| x.get(0, k).is_zero()));
            }
        }
    }

    #[test]
    fn intertwiners() {
        for (l, j, abc) in [("A2", vec![1], (1, 1, 1)), ("G2", vec![1], (2, 1, 1)), ("BC2", vec![2], (3, 2, 1)), ("BC2", vec![1], (2, 1, 2))] {
            let c = ctx(l, &j);
            let w = WeightFunction::new(&c.aw, abc.0, abc.1, abc.2).unwrap();
            let dom = c.default_domain();
            for v in JParamSystem::enumerate(&c, &w) {
                let rep = HeckeRep::new(&c, &v, &dom);
                for i in 1..=2 {
                    let t = rep.matrix_of_tau(i);
                    assert_eq!(&t * &t, rep.tau_square_rhs(i), "{l} τ_{i}^2");
                    for lam in [[1, 0], [0, 1], [-1, 2]] {
                        let s = c.aw.simple(i).act_coweight(&lam);
                        assert_eq!(&t * &rep.matrix_of_x(&lam), &rep.matrix_of_x(&s) * &t);
                    }
                }
            }
        }
    }

    #[test]
    fn bc_equal_parameter_tau() {
        let c = ctx("BC2", &[]);
        let w = WeightFunction::new(&c.aw, 2, 1, 2).unwrap();
        assert_eq!(w.weight(0), w.weight(2));
        let dom = c.default_domain();
        let v = JParamSystem::all_negative(&c, &w);
        let rep = HeckeRep::new(&c, &v, &dom);
        let t = rep.matrix_of_tau(2);
        assert_eq!(&t * &t, rep.tau_square_rhs(2));
    }
}
