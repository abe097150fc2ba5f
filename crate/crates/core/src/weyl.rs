//! Finite, affine and extended affine Weyl groups.
//!
//! An extended affine element is stored as `w = t_λ u` with `λ` a coweight and
//! `u` a finite Weyl group element given by its action on simple roots. Paths
//! and modules use the right action on alcoves, `w ↦ w s_i`. Node `0` is the
//! affine node with simple affine root `α_0 = −φ + δ`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{dot, neg, unit, Coweight, Root, RootSystem};

/// Element of the finite Weyl group `W_0`.
#[derive(Clone)]
pub struct FiniteWeylElt {
    n: usize,
    /// Row-major `n × n`; column `j` is `u(α_j)`.
    m: Vec<i64>,
    minv: Vec<i64>,
}

impl PartialEq for FiniteWeylElt {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m
    }
}
impl Eq for FiniteWeylElt {}
impl Hash for FiniteWeylElt {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.m.hash(h)
    }
}
impl PartialOrd for FiniteWeylElt {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for FiniteWeylElt {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.m.cmp(&o.m)
    }
}

fn matmul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

impl FiniteWeylElt {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![0; n * n];
        (0..n).for_each(|i| m[i * n + i] = 1);
        FiniteWeylElt { n, minv: m.clone(), m }
    }

    /// Reflection `s_α` for any root `α`.
    pub fn reflection(rs: &RootSystem, alpha: &[i64]) -> Self {
        let n = rs.rank;
        let cv = rs.coroot_unchecked(alpha);
        let mut m = vec![0; n * n];
        for j in 0..n {
            for k in 0..n {
                m[k * n + j] = if k == j { 1 } else { 0 } - cv[j] * alpha[k];
            }
        }
        FiniteWeylElt { n, minv: m.clone(), m }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn mul(&self, o: &Self) -> Self {
        FiniteWeylElt { n: self.n, m: matmul(self.n, &self.m, &o.m), minv: matmul(self.n, &o.minv, &self.minv) }
    }

    pub fn inverse(&self) -> Self {
        FiniteWeylElt { n: self.n, m: self.minv.clone(), minv: self.m.clone() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// `u(β)` for a root in simple-root coordinates.
    pub fn act_root(&self, beta: &[i64]) -> Root {
        let n = self.n;
        (0..n).map(|k| (0..n).map(|j| self.m[k * n + j] * beta[j]).sum()).collect()
    }

    /// `u^{-1}(β)`.
    pub fn act_root_inv(&self, beta: &[i64]) -> Root {
        let n = self.n;
        (0..n).map(|k| (0..n).map(|j| self.minv[k * n + j] * beta[j]).sum()).collect()
    }

    /// `u(λ)` for a coweight: `⟨uλ, α_j⟩ = ⟨λ, u^{-1}α_j⟩`.
    pub fn act_coweight(&self, lambda: &[i64]) -> Coweight {
        let n = self.n;
        (0..n).map(|j| (0..n).map(|k| lambda[k] * self.minv[k * n + j]).sum()).collect()
    }

    /// Table whose column `j` is `u(α_j)`.
    pub fn root_action(&self) -> Vec<Vec<i64>> {
        self.m.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Rebuilds an element from its root action table by peeling right descents.
    pub fn from_root_action(rs: &RootSystem, table: &[Vec<i64>]) -> Result<Self> {
        let n = rs.rank;
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("root action table has the wrong shape".into()));
        }
        let mut cur = FiniteWeylElt { n, m: table.concat(), minv: vec![0; n * n] };
        let mut word = Vec::new();
        let bound = rs.positive_roots.len() + 1;
        while !cur.m.iter().eq(Self::identity(n).m.iter()) {
            let col = |j: usize| (0..n).map(|k| cur.m[k * n + j]).collect::<Vec<_>>();
            let i = (0..n)
                .find(|&j| RootSystem::is_negative(&col(j)))
                .ok_or_else(|| Error::Precondition("table is not a Weyl group element".into()))?;
            let s = FiniteWeylElt::reflection(rs, &unit(n, i));
            cur.m = matmul(n, &cur.m, &s.m);
            word.push(i + 1);
            if word.len() > bound {
                return Err(Error::Precondition("table is not a Weyl group element".into()));
            }
        }
        let mut u = Self::identity(n);
        for &i in word.iter().rev() {
            u = u.mul(&FiniteWeylElt::reflection(rs, &unit(n, i - 1)));
        }
        Ok(u)
    }
}

impl fmt::Debug for FiniteWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W0{:?}", self.root_action())
    }
}

/// `w = t_wt · lin`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineElt {
    pub wt: Coweight,
    pub lin: FiniteWeylElt,
}

impl ExtAffineElt {
    pub fn identity(n: usize) -> Self {
        ExtAffineElt { wt: vec![0; n], lin: FiniteWeylElt::identity(n) }
    }

    pub fn translation(lambda: &[i64]) -> Self {
        ExtAffineElt { wt: lambda.to_vec(), lin: FiniteWeylElt::identity(lambda.len()) }
    }

    pub fn finite(u: FiniteWeylElt) -> Self {
        ExtAffineElt { wt: vec![0; u.rank()], lin: u }
    }

    /// `t_{λa} u_a t_{λb} u_b = t_{λa + u_a λb} u_a u_b`.
    pub fn mul(&self, o: &Self) -> Self {
        let w = self.lin.act_coweight(&o.wt);
        ExtAffineElt { wt: self.wt.iter().zip(&w).map(|(a, b)| a + b).collect(), lin: self.lin.mul(&o.lin) }
    }

    pub fn inverse(&self) -> Self {
        let ui = self.lin.inverse();
        ExtAffineElt { wt: neg(&ui.act_coweight(&self.wt)), lin: ui }
    }

    pub fn is_identity(&self) -> bool {
        self.wt.iter().all(|&x| x == 0) && self.lin.is_identity()
    }
}

impl fmt::Debug for ExtAffineElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{:?}·{:?}", self.wt, self.lin)
    }
}

#[derive(Serialize, Deserialize)]
struct EltRepr {
    wt: Vec<i64>,
    lin: Vec<Vec<i64>>,
}

impl Serialize for ExtAffineElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EltRepr { wt: self.wt.clone(), lin: self.lin.root_action() }.serialize(s)
    }
}

/// `α + kδ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineRoot {
    pub linear: Root,
    pub k: i64,
}

impl AffineRoot {
    pub fn is_positive(&self) -> bool {
        self.k > 0 || (self.k == 0 && RootSystem::is_positive(&self.linear))
    }
}

/// A length-zero element with the permutation of `{0} ∪ I` it induces.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramAut {
    pub node_perm: Vec<usize>,
    pub as_element: ExtAffineElt,
}

/// The extended affine Weyl group of a root system with cached data.
#[derive(Clone, Debug)]
pub struct AffineWeyl {
    pub rs: RootSystem,
    simple: Vec<FiniteWeylElt>,
    gens: Vec<ExtAffineElt>,
    simple_affine: Vec<AffineRoot>,
    pub phi_coroot: Coweight,
    sigma: Vec<DiagramAut>,
    /// Coxeter matrix on `{0} ∪ I`; `0` encodes `∞`.
    pub coxeter: Vec<Vec<u32>>,
    /// Parameter class of each node of `{0} ∪ I`.
    pub class_of: Vec<usize>,
    /// Weight letter (`a`, `b` or `c`) of each node.
    pub letter: Vec<char>,
    phi1: Vec<Root>,
}

impl AffineWeyl {
    pub fn new(rs: RootSystem) -> AffineWeyl {
        let n = rs.rank;
        let simple: Vec<FiniteWeylElt> = (0..n).map(|i| FiniteWeylElt::reflection(&rs, &unit(n, i))).collect();
        let phi = rs.highest_root.clone();
        let phi_coroot = rs.coroot_unchecked(&phi);
        let s_phi = FiniteWeylElt::reflection(&rs, &phi);
        let mut gens = vec![ExtAffineElt { wt: phi_coroot.clone(), lin: s_phi }];
        gens.extend(simple.iter().cloned().map(ExtAffineElt::finite));
        let mut simple_affine = vec![AffineRoot { linear: neg(&phi), k: 1 }];
        simple_affine.extend((0..n).map(|i| AffineRoot { linear: unit(n, i), k: 0 }));

        // Coxeter matrix from the affine Cartan pairings.
        let lin = |i: usize| simple_affine[i].linear.clone();
        let mut coxeter = vec![vec![1u32; n + 1]; n + 1];
        for i in 0..=n {
            for j in 0..=n {
                if i == j {
                    continue;
                }
                let cij = dot(&rs.coroot_unchecked(&lin(i)), &lin(j));
                let cji = dot(&rs.coroot_unchecked(&lin(j)), &lin(i));
                coxeter[i][j] = match cij * cji {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    3 => 6,
                    _ => 0,
                };
            }
        }
        let phi1 = rs.positive_phi1().cloned().collect();
        let mut aw = AffineWeyl {
            rs,
            simple,
            gens,
            simple_affine,
            phi_coroot,
            sigma: Vec::new(),
            coxeter,
            class_of: Vec::new(),
            letter: Vec::new(),
            phi1,
        };
        aw.sigma = aw.compute_sigma();
        aw.compute_classes();
        aw
    }

    pub fn from_label(label: &str) -> Result<AffineWeyl> {
        Ok(Self::new(RootSystem::from_label(label)?))
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn identity(&self) -> ExtAffineElt {
        ExtAffineElt::identity(self.rank())
    }

    /// `s_i` for `i ∈ {0} ∪ I`.
    pub fn gen(&self, i: usize) -> &ExtAffineElt {
        &self.gens[i]
    }

    /// Finite simple reflection `s_i`, `i ∈ I`.
    pub fn simple(&self, i: usize) -> &FiniteWeylElt {
        &self.simple[i - 1]
    }

    /// The simple affine root `α_i` (`α_0 = −φ + δ`).
    pub fn simple_affine_root(&self, i: usize) -> &AffineRoot {
        &self.simple_affine[i]
    }

    pub fn sigma_group(&self) -> &[DiagramAut] {
        &self.sigma
    }

    /// `w(α + kδ) = uα + (k − ⟨λ, uα⟩)δ` for `w = t_λ u`.
    pub fn act_on_affine_root(&self, w: &ExtAffineElt, a: &AffineRoot) -> AffineRoot {
        let ua = w.lin.act_root(&a.linear);
        let k = a.k - dot(&w.wt, &ua);
        AffineRoot { linear: ua, k }
    }

    /// `+1` if `w → w s_i` is a positive crossing, `−1` otherwise.
    pub fn crossing_sign(&self, w: &ExtAffineElt, i: usize) -> i8 {
        let lin = w.lin.act_root(&self.simple_affine[i].linear);
        if RootSystem::is_negative(&lin) {
            1
        } else {
            -1
        }
    }

    /// Number of hyperplanes separating `A_0` from `wA_0`.
    pub fn length(&self, w: &ExtAffineElt) -> usize {
        self.phi1
            .iter()
            .map(|a| {
                let neg = RootSystem::is_negative(&w.lin.act_root_inv(a)) as i64;
                (dot(&w.wt, a) - neg).unsigned_abs() as usize
            })
            .sum()
    }

    /// `ℓ(w s_i) < ℓ(w)`.
    pub fn is_right_descent(&self, w: &ExtAffineElt, i: usize) -> bool {
        !self.act_on_affine_root(w, &self.simple_affine[i]).is_positive()
    }

    /// `ℓ(s_i w) < ℓ(w)`, i.e. `w^{-1}(α_i)` is negative.
    pub fn is_left_descent(&self, w: &ExtAffineElt, i: usize) -> bool {
        let b = &self.simple_affine[i];
        let lin = w.lin.act_root_inv(&b.linear);
        let k = b.k + dot(&w.wt, &b.linear);
        !AffineRoot { linear: lin, k }.is_positive()
    }

    /// Reduced expression `w = s_{i_1} ⋯ s_{i_ℓ} σ`, peeling the smallest left
    /// descent at each step. Returns the letters and the index of σ in
    /// [`Self::sigma_group`].
    pub fn reduced_word(&self, w: &ExtAffineElt) -> (Vec<usize>, usize) {
        let (word, rest) = self.peel(w);
        let idx = self
            .sigma
            .iter()
            .position(|s| s.as_element == rest)
            .expect("length-zero remainder must lie in the group of diagram automorphisms");
        (word, idx)
    }

    fn peel(&self, w: &ExtAffineElt) -> (Vec<usize>, ExtAffineElt) {
        let mut cur = w.clone();
        let mut word = Vec::new();
        loop {
            match (0..=self.rank()).find(|&i| self.is_left_descent(&cur, i)) {
                Some(i) => {
                    cur = self.gens[i].mul(&cur);
                    word.push(i);
                }
                None => return (word, cur),
            }
        }
    }

    /// `s_{i_1} ⋯ s_{i_k} σ`.
    pub fn word_to_elt(&self, word: &[usize], sigma: Option<usize>) -> ExtAffineElt {
        let mut w = self.identity();
        for &i in word {
            w = w.mul(&self.gens[i]);
        }
        match sigma {
            Some(s) => w.mul(&self.sigma[s].as_element),
            None => w,
        }
    }

    fn compute_sigma(&self) -> Vec<DiagramAut> {
        let n = self.rank();
        let mut elts = vec![self.identity()];
        if self.rs.reduced {
            for i in 0..n {
                if self.rs.marks[i] == 1 {
                    let (_, rest) = self.peel(&ExtAffineElt::translation(&unit(n, i)));
                    if !elts.contains(&rest) {
                        elts.push(rest);
                    }
                }
            }
        }
        elts.into_iter()
            .map(|s| {
                let si = s.inverse();
                let node_perm = (0..=n)
                    .map(|j| {
                        let c = s.mul(&self.gens[j]).mul(&si);
                        self.gens.iter().position(|g| *g == c).expect("conjugate of a generator is a generator")
                    })
                    .collect();
                DiagramAut { node_perm, as_element: s }
            })
            .collect()
    }

    fn compute_classes(&mut self) {
        let n = self.rank();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let join = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for i in 0..=n {
            for j in 0..=n {
                if self.coxeter[i][j] == 3 {
                    join(&mut parent, i, j);
                }
            }
        }
        for s in &self.sigma {
            for (i, &j) in s.node_perm.iter().enumerate() {
                join(&mut parent, i, j);
            }
        }
        self.class_of = (0..=n).map(|i| find(&mut parent, i)).collect();
        self.letter = (0..=n)
            .map(|i| {
                let lin = &self.simple_affine[i].linear;
                if !self.rs.reduced {
                    if i == 0 {
                        'c'
                    } else if i == n {
                        'a'
                    } else {
                        'b'
                    }
                } else if self.rs.is_long_in_phi0(lin) {
                    'b'
                } else {
                    'a'
                }
            })
            .collect();
    }

    /// Elements of `W_0`, by breadth-first search (small ranks only).
    pub fn finite_group(&self) -> Vec<FiniteWeylElt> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([FiniteWeylElt::identity(self.rank())]);
        while let Some(u) = queue.pop_front() {
            if !seen.insert(u.clone()) {
                continue;
            }
            for s in &self.simple {
                let v = u.mul(s);
                if !seen.contains(&v) {
                    queue.push_back(v);
                }
            }
            out.push(u);
        }
        out
    }

    /// Longest element of the parabolic subgroup `W_K`.
    pub fn longest_in(&self, k: &[usize]) -> FiniteWeylElt {
        let mut w = FiniteWeylElt::identity(self.rank());
        loop {
            let asc = k.iter().find(|&&j| RootSystem::is_positive(&w.act_root(&unit(self.rank(), j - 1))));
            match asc {
                Some(&j) => w = w.mul(&self.simple[j - 1]),
                None => return w,
            }
        }
    }

    /// Finite length `|{α ∈ Φ_1^+ : u(α) < 0}|`.
    pub fn finite_length(&self, u: &FiniteWeylElt) -> usize {
        self.phi1.iter().filter(|a| RootSystem::is_negative(&u.act_root(a))).count()
    }

    /// Reduced word of a finite element (right descents peeled from the end).
    pub fn finite_word(&self, u: &FiniteWeylElt) -> Vec<usize> {
        let n = self.rank();
        let mut cur = u.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..=n).find(|&i| RootSystem::is_negative(&cur.act_root(&unit(n, i - 1)))) {
            cur = cur.mul(&self.simple[i - 1]);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// `s_{α,k} = t_{kα^∨} s_α`, the reflection in `H_{α,k}`.
    pub fn affine_reflection(&self, alpha: &[i64], k: i64) -> ExtAffineElt {
        let cv = self.rs.coroot_unchecked(alpha);
        ExtAffineElt { wt: cv.iter().map(|x| k * x).collect(), lin: FiniteWeylElt::reflection(&self.rs, alpha) }
    }

    /// All elements of `W` (no σ-part) of length at most `radius`, grouped by length.
    pub fn ball(&self, radius: usize) -> Vec<Vec<ExtAffineElt>> {
        let mut shells = vec![vec![self.identity()]];
        let mut seen: HashSet<ExtAffineElt> = HashSet::from([self.identity()]);
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in shells.last().unwrap() {
                for i in 0..=self.rank() {
                    if self.is_right_descent(w, i) {
                        continue;
                    }
                    let v = w.mul(&self.gens[i]);
                    if seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            shells.push(next);
        }
        shells
    }

    /// Maps each element of a ball to one reduced word.
    pub fn words_in_ball(&self, radius: usize) -> HashMap<ExtAffineElt, Vec<usize>> {
        let mut out = HashMap::new();
        out.insert(self.identity(), vec![]);
        let mut frontier = vec![(self.identity(), vec![])];
        for _ in 0..radius {
            let mut next = Vec::new();
            for (w, word) in &frontier {
                for i in 0..=self.rank() {
                    let v = w.mul(&self.gens[i]);
                    if out.contains_key(&v) || self.is_right_descent(w, i) {
                        continue;
                    }
                    let mut wd: Vec<usize> = word.clone();
                    wd.push(i);
                    out.insert(v.clone(), wd.clone());
                    next.push((v, wd));
                }
            }
            frontier = next;
        }
        out
    }
}
