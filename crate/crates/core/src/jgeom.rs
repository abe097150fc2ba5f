//! The fundamental J-alcove `𝒜_J` and the combinatorics attached to it.
//!
//! `𝒜_J` is cut out by the walls `H_{α_j,0}` (`j ∈ J`) and `H_{φ_K,1}` for each
//! connected component `K` of `J`. The elements `w` with `wA_0 ⊆ 𝒜_J` form
//! `𝕎^J = {𝗍_λ u : λ ∈ 𝒜_J ∩ P, u ∈ W^J}` where `𝗍_λ = t_λ y_λ` and
//! `y_λ = w_{J∖J_λ} w_J`.
//!
//! Finite elements are decomposed on the left, `w = y u` with `y ∈ W_J` and
//! `u ∈ W^J` (no left descents in `J`).

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{dot, unit, Coweight, Root, RootSystem};
use crate::weyl::{AffineRoot, AffineWeyl, ExtAffineElt, FiniteWeylElt};

const PROJECTION_CAP: usize = 10_000;

/// A wall of `𝒜_J`: the hyperplane `⟨x, root⟩ = level`, stored with its
/// `Φ_1` representative. `doubled` marks `H_{α_n,0} = H_{2α_n,0}` in type BC.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub root: Root,
    pub level: i64,
    pub doubled: bool,
}

#[derive(Clone, Debug)]
pub struct JContext {
    pub aw: AffineWeyl,
    /// Sorted, 1-based.
    pub j: Vec<usize>,
    pub components: Vec<(Vec<usize>, Root)>,
    pub walls: Vec<Wall>,
    wj: OnceLock<(Vec<FiniteWeylElt>, HashMap<FiniteWeylElt, usize>)>,
    /// Coroots `α_j^∨` (`j ∈ J`) in ω-coordinates.
    pub qj_basis: Vec<Coweight>,
    /// Row `i` holds the ζ-exponent of `ω_{i+1}`.
    pub zeta_matrix: Vec<Vec<i64>>,
    /// One positive representative per `W_J`-orbit on `Φ_J` (orbits are closed
    /// under negation).
    pub orbit_reps: Vec<Root>,
    orbit_index: HashMap<Root, usize>,
    w_j: FiniteWeylElt,
}

impl JContext {
    pub fn new(aw: AffineWeyl, j: &[usize]) -> Result<JContext> {
        let n = aw.rank();
        let mut jv: Vec<usize> = j.to_vec();
        jv.sort_unstable();
        jv.dedup();
        if let Some(&bad) = jv.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::InvalidNode(bad));
        }
        let rs = &aw.rs;
        let components = rs.phi_components(&jv);
        let mut walls = Vec::new();
        for &x in &jv {
            let a = unit(n, x - 1);
            let doubled = rs.double_is_root(&a);
            let root = if doubled { a.iter().map(|c| 2 * c).collect() } else { a };
            walls.push(Wall { root, level: 0, doubled });
        }
        for (_, phi_k) in &components {
            walls.push(Wall { root: phi_k.clone(), level: 1, doubled: false });
        }
        let qj_basis = jv.iter().map(|&x| rs.coroot_unchecked(&unit(n, x - 1))).collect();
        let zeta_matrix = zeta_matrix(rs, &jv);
        let w_j = aw.longest_in(&jv);
        let (orbit_reps, orbit_index) = root_orbits(rs, &jv);
        Ok(JContext {
            aw,
            j: jv,
            components,
            walls,
            wj: OnceLock::new(),
            qj_basis,
            zeta_matrix,
            orbit_reps,
            orbit_index,
            w_j,
        })
    }

    /// `W^J`, ordered by length then by reduced word. Computed on first use.
    pub fn wj_reps(&self) -> &[FiniteWeylElt] {
        &self.wj_cache().0
    }

    fn wj_cache(&self) -> &(Vec<FiniteWeylElt>, HashMap<FiniteWeylElt, usize>) {
        self.wj.get_or_init(|| {
            let reps = self.compute_wj();
            let index = reps.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
            (reps, index)
        })
    }

    pub fn from_label(label: &str, j: &[usize]) -> Result<JContext> {
        Self::new(AffineWeyl::from_label(label)?, j)
    }

    pub fn rs(&self) -> &RootSystem {
        &self.aw.rs
    }

    pub fn rank(&self) -> usize {
        self.aw.rank()
    }

    /// Number of ζ-variables, `|I ∖ J|`.
    pub fn zeta_arity(&self) -> usize {
        self.rank() - self.j.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.j.binary_search(&i).is_ok()
    }

    /// Index of the component of `J` containing node `i`.
    pub fn component_of(&self, i: usize) -> Option<usize> {
        self.components.iter().position(|(k, _)| k.contains(&i))
    }

    /// `W_J`-orbit of a root of `Φ_J`.
    pub fn orbit_of(&self, a: &[i64]) -> Option<usize> {
        self.orbit_index.get(a).copied()
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit_reps.len()
    }

    pub fn longest_j(&self) -> &FiniteWeylElt {
        &self.w_j
    }

    pub fn in_aj(&self, lambda: &[i64]) -> bool {
        self.walls.iter().all(|w| {
            let p = dot(lambda, &w.root);
            if w.level == 0 {
                p >= 0
            } else {
                p <= w.level
            }
        })
    }

    /// `λ^{(J)}`, the unique point of `(λ + Q_J) ∩ 𝒜_J`.
    pub fn project_aj(&self, lambda: &[i64]) -> Result<Coweight> {
        let mut cur = lambda.to_vec();
        for _ in 0..PROJECTION_CAP {
            let violated = self.walls.iter().find(|w| {
                let p = dot(&cur, &w.root);
                if w.level == 0 {
                    p < 0
                } else {
                    p > w.level
                }
            });
            match violated {
                None => return Ok(cur),
                Some(w) => {
                    let k = dot(&cur, &w.root) - w.level;
                    let cv = self.rs().coroot_unchecked(&w.root);
                    cur.iter_mut().zip(&cv).for_each(|(x, c)| *x -= k * c);
                }
            }
        }
        Err(Error::ProjectionDiverged)
    }

    /// `J_λ = {j ∈ J : ⟨λ, α_j⟩ ≠ 0}`.
    pub fn j_lambda(&self, lambda: &[i64]) -> Vec<usize> {
        self.j.iter().copied().filter(|&x| lambda[x - 1] != 0).collect()
    }

    /// Membership in `𝒜_J` via the combinatorial description of `J_λ`.
    pub fn in_aj_by_strip(&self, lambda: &[i64]) -> bool {
        let jl = self.j_lambda(lambda);
        jl.iter().all(|&x| lambda[x - 1] == 1)
            && self.components.iter().all(|(k, phi)| {
                let hits: Vec<_> = jl.iter().filter(|x| k.contains(x)).collect();
                hits.len() <= 1 && hits.iter().all(|&&x| phi[x - 1] == 1)
            })
    }

    /// `(y_λ, 𝗍_λ)` for `λ ∈ 𝒜_J ∩ P`.
    pub fn y_t_of(&self, lambda: &[i64]) -> Result<(FiniteWeylElt, ExtAffineElt)> {
        if !self.in_aj(lambda) {
            return Err(Error::Precondition(format!("{lambda:?} is not in the fundamental J-alcove")));
        }
        let jl = self.j_lambda(lambda);
        let rest: Vec<usize> = self.j.iter().copied().filter(|x| !jl.contains(x)).collect();
        let y = self.aw.longest_in(&rest).mul(&self.w_j);
        let t = ExtAffineElt { wt: lambda.to_vec(), lin: y.clone() };
        Ok((y, t))
    }

    pub fn t_of(&self, lambda: &[i64]) -> Result<ExtAffineElt> {
        Ok(self.y_t_of(lambda)?.1)
    }

    /// `w^{-1}(β + kδ)`.
    fn inv_act(&self, w: &ExtAffineElt, b: &[i64], k: i64) -> AffineRoot {
        AffineRoot { linear: w.lin.act_root_inv(b), k: k + dot(&w.wt, b) }
    }

    /// `wA_0 ⊆ 𝒜_J`.
    pub fn in_wbbj(&self, w: &ExtAffineElt) -> bool {
        self.walls.iter().all(|wall| {
            let r = if wall.level == 0 {
                self.inv_act(w, &wall.root, 0)
            } else {
                let neg: Vec<i64> = wall.root.iter().map(|c| -c).collect();
                self.inv_act(w, &neg, wall.level)
            };
            r.is_positive()
        })
    }

    /// `Φ_J(u) = ∅`.
    pub fn in_wj(&self, u: &FiniteWeylElt) -> bool {
        let n = self.rank();
        self.j.iter().all(|&x| RootSystem::is_positive(&u.act_root_inv(&unit(n, x - 1))))
    }

    /// `u = y θ^J(u)` with `y ∈ W_J`; returns `θ^J(u)`.
    pub fn theta_upper(&self, u: &FiniteWeylElt) -> FiniteWeylElt {
        let n = self.rank();
        let mut cur = u.clone();
        while let Some(&x) = self.j.iter().find(|&&x| RootSystem::is_negative(&cur.act_root_inv(&unit(n, x - 1)))) {
            cur = self.aw.simple(x).mul(&cur);
        }
        cur
    }

    /// `w = 𝗍_λ u` with `λ = wt(w)` and `u = θ^J(w) ∈ W^J`.
    pub fn decompose_wbbj(&self, w: &ExtAffineElt) -> Result<(Coweight, FiniteWeylElt)> {
        if !self.in_wbbj(w) {
            return Err(Error::Precondition(format!("{w:?} does not lie in the fundamental J-alcove")));
        }
        let (y, _) = self.y_t_of(&w.wt)?;
        let u = y.inverse().mul(&w.lin);
        debug_assert!(self.in_wj(&u));
        Ok((w.wt.clone(), u))
    }

    /// `𝗍_λ 𝗍_μ = 𝗍_{(λ+μ)^{(J)}}`.
    pub fn tj_mul(&self, lambda: &[i64], mu: &[i64]) -> Result<Coweight> {
        if !self.in_aj(lambda) || !self.in_aj(mu) {
            return Err(Error::Precondition("translation weights must lie in the fundamental J-alcove".into()));
        }
        let s: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a + b).collect();
        self.project_aj(&s)
    }

    /// Exponent of `ζ_J^λ` in the canonical basis of `P^J`.
    pub fn zeta_exponent(&self, lambda: &[i64]) -> Vec<i64> {
        let m = self.zeta_arity();
        let mut out = vec![0; m];
        for (l, row) in lambda.iter().zip(&self.zeta_matrix) {
            out.iter_mut().zip(row).for_each(|(o, r)| *o += l * r);
        }
        out
    }

    /// Points of `𝒜_J ∩ P` with coordinates in `[-r, r]`.
    pub fn aj_points(&self, r: i64) -> Vec<Coweight> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![-r; n];
        loop {
            if self.in_aj(&cur) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                cur[i] += 1;
                if cur[i] <= r {
                    break;
                }
                cur[i] = -r;
                i += 1;
            }
        }
    }

    /// Elements of the parabolic subgroup `W_K`.
    pub fn parabolic_elements(&self, k: &[usize]) -> Vec<FiniteWeylElt> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([FiniteWeylElt::identity(self.rank())]);
        while let Some(u) = queue.pop_front() {
            if !seen.insert(u.clone()) {
                continue;
            }
            for &x in k {
                queue.push_back(u.mul(self.aw.simple(x)));
            }
            out.push(u);
        }
        out
    }

    fn compute_wj(&self) -> Vec<FiniteWeylElt> {
        // Prefixes of minimal coset representatives are minimal, so a search by
        // right multiplication filtered by Φ_J(u) = ∅ reaches all of W^J.
        let n = self.rank();
        let mut seen = HashSet::new();
        let e = FiniteWeylElt::identity(n);
        seen.insert(e.clone());
        let mut out = vec![e.clone()];
        let mut frontier = vec![e];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for u in &frontier {
                for i in 1..=n {
                    let v = u.mul(self.aw.simple(i));
                    if self.in_wj(&v) && seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        let mut keyed: Vec<_> =
            out.into_iter().map(|u| ((self.aw.finite_length(&u), self.aw.finite_word(&u)), u)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, u)| u).collect()
    }

    pub fn wj_index(&self, u: &FiniteWeylElt) -> Option<usize> {
        self.wj_cache().1.get(u).copied()
    }

    pub fn default_domain(&self) -> FundamentalDomain {
        FundamentalDomain::new(self, self.wj_reps().iter().cloned().map(ExtAffineElt::finite).collect())
            .expect("W^J is a fundamental domain")
    }

    /// `(σ^{-1}, σ^{-2}, …, σ^{-(n+1)} = e)` for `A_n`, `J = {1, …, n−1}`,
    /// where `σ` rotates the nodes `i ↦ i + 1`.
    pub fn sigma_domain(&self) -> Result<FundamentalDomain> {
        let n = self.rank();
        let expected: Vec<usize> = (1..n).collect();
        if self.rs().kind != crate::rootdata::CartanType::A || self.j != expected {
            return Err(Error::InvalidDomain("the Σ domain exists only for A_n with J = {1, …, n−1}".into()));
        }
        let sigma = self.aw.rotation_sigma().expect("type A has a rotation");
        let sinv = self.aw.sigma_group()[sigma].as_element.inverse();
        let mut cur = self.aw.identity();
        let mut members = Vec::new();
        for _ in 0..=n {
            cur = cur.mul(&sinv);
            members.push(cur.clone());
        }
        FundamentalDomain::new(self, members)
    }
}

impl AffineWeyl {
    /// Index in [`AffineWeyl::sigma_group`] of the rotation `i ↦ i + 1` in type A.
    pub fn rotation_sigma(&self) -> Option<usize> {
        let n = self.rank();
        self.sigma_group().iter().position(|s| (0..=n).all(|i| s.node_perm[i] == (i + 1) % (n + 1)))
    }
}

/// An ordered set of representatives of the `T_J`-orbits on `𝕎^J`.
#[derive(Clone, Debug)]
pub struct FundamentalDomain {
    pub members: Vec<ExtAffineElt>,
    /// `h(f)` with `f = 𝗍_{h(f)} g(f)`.
    pub heights: Vec<Coweight>,
    /// Position of `g(f)` in `W^J`.
    pub g_index: Vec<usize>,
    /// Inverse of `g_index`.
    by_wj: Vec<usize>,
}

impl FundamentalDomain {
    pub fn new(ctx: &JContext, members: Vec<ExtAffineElt>) -> Result<FundamentalDomain> {
        if members.len() != ctx.wj_reps().len() {
            return Err(Error::InvalidDomain(format!(
                "expected {} members, got {}",
                ctx.wj_reps().len(),
                members.len()
            )));
        }
        let mut heights = Vec::new();
        let mut g_index = Vec::new();
        let mut by_wj = vec![usize::MAX; members.len()];
        for (pos, f) in members.iter().enumerate() {
            let (h, g) = ctx.decompose_wbbj(f).map_err(|_| Error::InvalidDomain(format!("{f:?} is not in 𝕎^J")))?;
            let gi = ctx.wj_index(&g).expect("θ^J lands in W^J");
            if by_wj[gi] != usize::MAX {
                return Err(Error::InvalidDomain(format!("two members lie in the same T_J-orbit ({f:?})")));
            }
            by_wj[gi] = pos;
            heights.push(h);
            g_index.push(gi);
        }
        Ok(FundamentalDomain { members, heights, g_index, by_wj })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `(μ, f)` with `w = 𝗍_μ f`, `μ ∈ 𝒜_J ∩ P`, `f` the member index.
    pub fn locate(&self, ctx: &JContext, w: &ExtAffineElt) -> Result<(Coweight, usize)> {
        let (lambda, u) = ctx.decompose_wbbj(w)?;
        let gi = ctx.wj_index(&u).expect("θ^J lands in W^J");
        let f = self.by_wj[gi];
        let diff: Vec<i64> = lambda.iter().zip(&self.heights[f]).map(|(a, b)| a - b).collect();
        Ok((ctx.project_aj(&diff)?, f))
    }
}

fn root_orbits(rs: &RootSystem, j: &[usize]) -> (Vec<Root>, HashMap<Root, usize>) {
    let mut reps = Vec::new();
    let mut index = HashMap::new();
    for r in rs.positive_roots_in(j) {
        if index.contains_key(&r) {
            continue;
        }
        let id = reps.len();
        reps.push(r.clone());
        let mut stack = vec![r];
        while let Some(x) = stack.pop() {
            if index.insert(x.clone(), id).is_some() {
                continue;
            }
            for &k in j {
                let y = rs.reflect_simple(k - 1, &x);
                if !index.contains_key(&y) {
                    stack.push(y);
                }
            }
        }
    }
    (reps, index)
}

/// ζ-exponents of the fundamental coweights: coordinates of `d·ω_i^J` in the
/// Hermite basis of the lattice they span, where `d = det C_JJ`.
fn zeta_matrix(rs: &RootSystem, j: &[usize]) -> Vec<Vec<i64>> {
    let n = rs.rank;
    let rest: Vec<usize> = (1..=n).filter(|x| !j.contains(x)).collect();
    let m = rest.len();
    if m == 0 {
        return vec![vec![]; n];
    }
    let cjj: Vec<Vec<Ratio<i64>>> =
        j.iter().map(|&a| j.iter().map(|&b| Ratio::from_integer(rs.cartan[a - 1][b - 1])).collect()).collect();
    let d = det(&cjj);
    let images: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let lam = unit(n, i);
            // Σ_j x_j C_jk = λ_k for k ∈ J.
            let rhs: Vec<Ratio<i64>> = j.iter().map(|&k| Ratio::from_integer(lam[k - 1])).collect();
            let ct: Vec<Vec<Ratio<i64>>> = (0..j.len()).map(|r| (0..j.len()).map(|c| cjj[c][r]).collect()).collect();
            let x = solve(ct, rhs);
            rest.iter()
                .map(|&r| {
                    let v = Ratio::from_integer(lam[r - 1])
                        - x.iter().zip(j).map(|(xi, &jj)| *xi * rs.cartan[jj - 1][r - 1]).sum::<Ratio<i64>>();
                    let s = v * d;
                    assert!(s.is_integer());
                    s.to_integer()
                })
                .collect()
        })
        .collect();
    let basis = hermite_basis(&images, m);
    images.iter().map(|v| coords_in(&basis, v)).collect()
}

fn det(a: &[Vec<Ratio<i64>>]) -> Ratio<i64> {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Ratio::from_integer(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != Ratio::from_integer(0)) else {
            return Ratio::from_integer(0);
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                let t = m[c][k];
                m[r][k] -= f * t;
            }
        }
    }
    d
}

fn solve(mut a: Vec<Vec<Ratio<i64>>>, mut b: Vec<Ratio<i64>>) -> Vec<Ratio<i64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Ratio::from_integer(0)).expect("Cartan submatrix is invertible");
        a.swap(p, c);
        b.swap(p, c);
        for r in 0..n {
            if r != c && a[r][c] != Ratio::from_integer(0) {
                let f = a[r][c] / a[c][c];
                for k in 0..n {
                    let t = a[c][k];
                    a[r][k] -= f * t;
                }
                let t = b[c];
                b[r] -= f * t;
            }
        }
    }
    (0..n).map(|i| b[i] / a[i][i]).collect()
}

/// Row Hermite normal form basis (upper triangular, positive pivots, entries
/// above a pivot reduced into `[0, pivot)`) of the lattice spanned by `rows`.
fn hermite_basis(rows: &[Vec<i64>], m: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for c in 0..m {
        // Euclid on column c among the remaining rows.
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| rows[r][c].abs()).unwrap();
            let piv = rows[p].clone();
            for &r in &nz {
                if r != p {
                    let q = Integer::div_floor(&rows[r][c], &piv[c]);
                    rows[r].iter_mut().zip(&piv).for_each(|(x, y)| *x -= q * y);
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&r| rows[r][c] != 0) {
            let mut piv = rows.remove(p);
            if piv[c] < 0 {
                piv.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(piv);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    for i in 0..basis.len() {
        let c = basis[i].iter().position(|&x| x != 0).unwrap();
        for k in 0..i {
            let q = Integer::div_floor(&basis[k][c], &basis[i][c]);
            let bi = basis[i].clone();
            basis[k].iter_mut().zip(&bi).for_each(|(x, y)| *x -= q * y);
        }
    }
    basis
}

fn coords_in(basis: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let mut rest = v.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for b in basis {
        let c = b.iter().position(|&x| x != 0).unwrap();
        assert_eq!(rest[c] % b[c], 0, "vector outside the lattice");
        let k = rest[c] / b[c];
        rest.iter_mut().zip(b).for_each(|(x, y)| *x -= k * y);
        out.push(k);
    }
    assert!(rest.iter().all(|&x| x == 0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(l: &str, j: &[usize]) -> JContext {
        JContext::from_label(l, j).unwrap()
    }

    #[test]
    fn membership_and_projection() {
        let c = ctx("A2", &[1]);
        assert!(c.in_aj(&[0, 1]));
        assert!(!c.in_aj(&[2, -1]));
        assert!(c.in_aj(&[0, 0]));
        assert_eq!(c.project_aj(&[2, -1]).unwrap(), vec![0, 0]);
        for l in ["A3", "C3", "G2", "BC3"] {
            for j in [vec![], vec![1], vec![1, 2], vec![2, 3], vec![1, 3]] {
                if j.iter().any(|&x| x > RootSystem::from_label(l).unwrap().rank) {
                    continue;
                }
                let c = ctx(l, &j);
                for p in c.aj_points(2) {
                    assert_eq!(c.project_aj(&p).unwrap(), p);
                }
                for p in (ctx(l, &[]).aj_points(2)).iter().chain(&[vec![-3; c.rank()]]) {
                    assert_eq!(c.in_aj(p), c.in_aj_by_strip(p), "{l} {j:?} {p:?}");
                }
            }
        }
    }

    #[test]
    fn y_and_t_elements() {
        let c = ctx("A2", &[1]);
        let (y, _) = c.y_t_of(&[1, 0]).unwrap();
        assert_eq!(&y, c.aw.simple(1));
        let (y, t) = c.y_t_of(&[0, 5]).unwrap();
        assert!(y.is_identity());
        assert_eq!(t, ExtAffineElt::translation(&[0, 5]));
        assert!(c.y_t_of(&[2, 0]).is_err());
        for n in 2..=4 {
            let c = ctx(&format!("A{n}"), &(1..n).collect::<Vec<_>>());
            let t = c.t_of(&unit(n, 0)).unwrap();
            let s = c.aw.rotation_sigma().unwrap();
            assert_eq!(t, c.aw.word_to_elt(&[0], Some(s)));
        }
    }

    #[test]
    fn inversion_set_of_y() {
        for (l, j) in [("B3", vec![1, 2]), ("A3", vec![1, 3]), ("G2", vec![1]), ("BC3", vec![2, 3]), ("F4", vec![2, 3, 4])] {
            let c = ctx(l, &j);
            for p in c.aj_points(1) {
                let (y, _) = c.y_t_of(&p).unwrap();
                let got: HashSet<Root> = c
                    .rs()
                    .positive_phi0()
                    .filter(|a| RootSystem::is_negative(&y.act_root_inv(a)))
                    .cloned()
                    .collect();
                let want: HashSet<Root> = c
                    .rs()
                    .positive_roots_in(&c.j)
                    .into_iter()
                    .filter(|a| c.rs().in_phi0(a) && dot(&p, a) == 1)
                    .collect();
                assert_eq!(got, want, "{l} {p:?}");
            }
        }
    }

    #[test]
    fn wbbj_decomposition() {
        for (l, j) in [("A2", vec![1]), ("C2", vec![2]), ("G2", vec![1]), ("BC2", vec![2]), ("A3", vec![1, 3])] {
            let c = ctx(l, &j);
            assert_eq!(c.aw.finite_group().len(), c.wj_reps().len() * c.parabolic_elements(&c.j).len());
            for p in c.aj_points(2) {
                let t = c.t_of(&p).unwrap();
                for u in c.wj_reps() {
                    let w = t.mul(&ExtAffineElt::finite(u.clone()));
                    assert!(c.in_wbbj(&w));
                    assert_eq!(c.decompose_wbbj(&w).unwrap(), (p.clone(), u.clone()));
                }
            }
            for shell in c.aw.ball(6) {
                for w in shell {
                    if c.in_wbbj(&w) {
                        let (lam, u) = c.decompose_wbbj(&w).unwrap();
                        assert!(c.in_wj(&u));
                        assert_eq!(c.t_of(&lam).unwrap().mul(&ExtAffineElt::finite(u)), w);
                    }
                }
            }
            for &x in &c.j {
                assert!(!c.in_wbbj(c.aw.gen(x)));
            }
        }
    }

    #[test]
    fn default_and_sigma_domains() {
        let c = ctx("A2", &[1]);
        let d = c.default_domain();
        let words: Vec<Vec<usize>> = d.members.iter().map(|m| c.aw.finite_word(&m.lin)).collect();
        assert_eq!(words, vec![vec![], vec![2], vec![2, 1]]);
        let s = c.sigma_domain().unwrap();
        assert_eq!(s.len(), 3);
        let sig = &c.aw.sigma_group()[c.aw.rotation_sigma().unwrap()].as_element;
        assert!(s.members.contains(sig) && s.members.contains(&c.aw.identity()));
        assert!(ctx("A2", &[]).sigma_domain().is_err());
        assert!(ctx("C2", &[1]).sigma_domain().is_err());
        // σ = 𝗍_{ω_1} s_2 in A_2.
        let sd = c.decompose_wbbj(sig).unwrap();
        assert_eq!(sd.0, vec![1, 0]);
        assert_eq!(&sd.1, c.aw.simple(2));
        let bad = vec![c.aw.identity(), c.aw.identity(), sig.clone()];
        assert!(FundamentalDomain::new(&c, bad).is_err());
        for n in 3..=4 {
            let c = ctx(&format!("A{n}"), &(1..n).collect::<Vec<_>>());
            assert_eq!(c.sigma_domain().unwrap().len(), n + 1);
        }
    }

    #[test]
    fn zeta_exponents() {
        for n in 2..=5 {
            let c = ctx(&format!("A{n}"), &(1..n).collect::<Vec<_>>());
            for i in 0..n {
                assert_eq!(c.zeta_exponent(&unit(n, i)), vec![i as i64 + 1]);
            }
        }
        let c = ctx("G2", &[1]);
        assert_eq!(c.zeta_exponent(&[0, 1]), vec![2]);
        assert_eq!(c.zeta_exponent(&[1, 0]), vec![3]);
        for (l, j) in [("B3", vec![2]), ("D4", vec![2]), ("C3", vec![1, 3]), ("F4", vec![2, 3]), ("BC3", vec![3])] {
            let c = ctx(l, &j);
            for q in &c.qj_basis {
                assert!(c.zeta_exponent(q).iter().all(|&x| x == 0));
            }
            // ω_i for i ∉ J map to a full-rank set.
            assert_eq!(c.zeta_exponent(&vec![0; c.rank()]).len(), c.zeta_arity());
        }
    }

    #[test]
    fn translation_group_orders_for_full_j() {
        for (l, order) in
            [("A1", 2), ("A4", 5), ("B4", 2), ("C3", 2), ("D4", 4), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1), ("BC4", 1)]
        {
            let c = ctx(l, &(1..=RootSystem::from_label(l).unwrap().rank).collect::<Vec<_>>());
            let pts = c.aj_points(1);
            assert_eq!(pts.len(), order, "{l}");
            for a in &pts {
                for b in &pts {
                    let ab = c.tj_mul(a, b).unwrap();
                    assert_eq!(c.t_of(a).unwrap().mul(&c.t_of(b).unwrap()), c.t_of(&ab).unwrap());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn projection_is_coset_invariant(l in prop::collection::vec(-4i64..5, 3), g in prop::collection::vec(-3i64..4, 2)) {
            let c = ctx("B3", &[2, 3]);
            let p = c.project_aj(&l).unwrap();
            prop_assert!(c.in_aj(&p));
            let mut shifted = l.clone();
            for (k, q) in g.iter().zip(&c.qj_basis) {
                shifted.iter_mut().zip(q).for_each(|(x, y)| *x += k * y);
            }
            prop_assert_eq!(c.project_aj(&shifted).unwrap(), p.clone());
            prop_assert_eq!(c.zeta_exponent(&p), c.zeta_exponent(&l));
        }

        #[test]
        fn translation_law(a in prop::collection::vec(-3i64..4, 3), b in prop::collection::vec(-3i64..4, 3)) {
            for (l, j) in [("A3", vec![1, 2]), ("C3", vec![2, 3]), ("BC3", vec![1, 3])] {
                let c = ctx(l, &j);
                let la = c.project_aj(&a).unwrap();
                let mb = c.project_aj(&b).unwrap();
                let (ya, ta) = c.y_t_of(&la).unwrap();
                let (yb, tb) = c.y_t_of(&mb).unwrap();
                let s = c.tj_mul(&la, &mb).unwrap();
                let alt: Vec<i64> = la.iter().zip(ya.act_coweight(&mb)).map(|(x, y)| x + y).collect();
                prop_assert_eq!(&alt, &s);
                let (ys, ts) = c.y_t_of(&s).unwrap();
                prop_assert_eq!(ya.mul(&yb), ys.clone());
                prop_assert_eq!(yb.mul(&ya), ys);
                prop_assert_eq!(ta.mul(&tb), ts);
                let inv = c.project_aj(&la.iter().map(|x| -x).collect::<Vec<_>>()).unwrap();
                prop_assert!(c.tj_mul(&la, &inv).unwrap().iter().all(|&x| x == 0));
            }
        }
    }
}
