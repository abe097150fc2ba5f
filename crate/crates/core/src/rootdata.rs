//! Irreducible root systems, reduced or of type BC, in integer coordinates.
//!
//! Roots are stored in the basis of simple roots and coweights in the basis of
//! fundamental coweights, so `⟨λ, α⟩` is a dot product. Nodes are numbered
//! `1..=n` following Bourbaki:
//!
//! | type | numbering                                                        |
//! |------|------------------------------------------------------------------|
//! | A_n  | chain 1–2–…–n                                                    |
//! | B_n  | chain, α_n short                                                 |
//! | C_n  | chain, α_n long                                                  |
//! | D_n  | chain 1–…–(n−2), with n−1 and n both attached to n−2             |
//! | E_n  | 1–3–4–5–…–n with 2 attached to 4                                 |
//! | F_4  | 1–2⇒3–4, α_1, α_2 long                                           |
//! | G_2  | α_1 short, α_2 long, highest root 3α_1 + 2α_2                    |
//! | BC_n | B_n numbering (α_n = e_n) plus the roots 2e_k                    |

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple-root coordinates of a root.
pub type Root = Vec<i64>;
/// Fundamental-coweight coordinates of a coweight.
pub type Coweight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            "BC" => CartanType::BC,
            _ => return Err(Error::UnknownType(s.to_string())),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
            CartanType::BC => "BC",
        };
        f.write_str(s)
    }
}

/// Length class of a root. `Middle` only occurs in BC_n (the roots e_i ± e_j).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LengthClass {
    Short,
    Middle,
    Long,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_{i+1}^∨, α_{j+1}⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// `norm2[i] = (α_{i+1}, α_{i+1})`, scaled so the shortest simple root has 1.
    pub norm2: Vec<i64>,
    pub positive_roots: Vec<Root>,
    pub highest_root: Root,
    pub marks: Vec<i64>,
    pub reduced: bool,
    index: HashMap<Root, usize>,
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

impl RootSystem {
    pub fn build(kind: CartanType, n: usize) -> Result<RootSystem> {
        let bad = || Error::UnknownType(format!("{kind}{n}"));
        let valid = match kind {
            CartanType::A | CartanType::BC => n >= 1,
            CartanType::B => n >= 2,
            CartanType::C => n >= 2,
            CartanType::D => n >= 4,
            CartanType::E => (6..=8).contains(&n),
            CartanType::F => n == 4,
            CartanType::G => n == 2,
        };
        if !valid {
            return Err(bad());
        }
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
            c[i - 1][j - 1] = cij;
            c[j - 1][i - 1] = cji;
        };
        match kind {
            CartanType::A => (1..n).for_each(|i| link(i, i + 1, -1, -1)),
            CartanType::B | CartanType::BC => {
                (1..n.saturating_sub(1)).for_each(|i| link(i, i + 1, -1, -1));
                if n >= 2 {
                    link(n - 1, n, -1, -2);
                }
            }
            CartanType::C => {
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 1, n, -2, -1);
            }
            CartanType::D => {
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n, -1, -1);
            }
            CartanType::E => {
                link(1, 3, -1, -1);
                link(2, 4, -1, -1);
                (3..n).for_each(|i| link(i, i + 1, -1, -1));
            }
            CartanType::F => {
                link(1, 2, -1, -1);
                link(2, 3, -1, -2);
                link(3, 4, -1, -1);
            }
            CartanType::G => link(1, 2, -3, -1),
        }
        Ok(Self::from_cartan(kind, c, kind == CartanType::BC))
    }

    /// Parses labels such as `A2`, `BC3`, `G2`.
    pub fn from_label(label: &str) -> Result<RootSystem> {
        let split = label.find(|ch: char| ch.is_ascii_digit()).ok_or_else(|| Error::UnknownType(label.into()))?;
        let kind: CartanType = label[..split].parse()?;
        let n: usize = label[split..].parse().map_err(|_| Error::UnknownType(label.into()))?;
        Self::build(kind, n)
    }

    fn from_cartan(kind: CartanType, c: Vec<Vec<i64>>, non_reduced: bool) -> RootSystem {
        let n = c.len();
        // Root lengths from the symmetrizer: |α_j|² = |α_i|² c_ij / c_ji.
        let mut norm2 = vec![0i64; n];
        norm2[0] = 6;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if c[i][j] != 0 && i != j && norm2[j] == 0 {
                    norm2[j] = norm2[i] * c[i][j] / c[j][i];
                    stack.push(j);
                }
            }
        }
        let g = norm2.iter().fold(0, |a, &b| gcd(a, b));
        norm2.iter_mut().for_each(|x| *x /= g);

        let mut rs = RootSystem {
            kind,
            rank: n,
            cartan: c,
            norm2,
            positive_roots: Vec::new(),
            highest_root: Vec::new(),
            marks: Vec::new(),
            reduced: !non_reduced,
            index: HashMap::new(),
        };

        // Closure of the simple roots under simple reflections.
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut frontier: Vec<Root> = (0..n).map(|i| unit(n, i)).collect();
        while let Some(r) = frontier.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in 0..n {
                let s = rs.reflect_simple(i, &r);
                if !seen.contains(&s) {
                    frontier.push(s);
                }
            }
        }
        let mut pos: Vec<Root> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        if non_reduced {
            let short = *rs.norm2.iter().min().unwrap();
            let doubled: Vec<Root> = pos
                .iter()
                .filter(|r| rs.norm(r) == short)
                .map(|r| r.iter().map(|x| 2 * x).collect())
                .collect();
            pos.extend(doubled);
        }
        pos.sort_by(|a, b| (height(a), a).cmp(&(height(b), b)));
        for (k, r) in pos.iter().enumerate() {
            rs.index.insert(r.clone(), 2 * k);
            rs.index.insert(neg(r), 2 * k + 1);
        }
        rs.highest_root = pos.last().unwrap().clone();
        rs.marks = rs.highest_root.clone();
        rs.positive_roots = pos;
        rs
    }

    /// `s_i(β) = β − ⟨α_i^∨, β⟩ α_i` for a 0-based node index.
    pub fn reflect_simple(&self, i: usize, beta: &[i64]) -> Root {
        let p: i64 = (0..self.rank).map(|j| self.cartan[i][j] * beta[j]).sum();
        let mut r = beta.to_vec();
        r[i] -= p;
        r
    }

    /// Twice the symmetric form, `2(α, β)`, integral in these coordinates.
    pub fn form2(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * b[j] * self.cartan[i][j] * self.norm2[i];
            }
        }
        s
    }

    /// `(α, α)` in the scaled form.
    pub fn norm(&self, a: &[i64]) -> i64 {
        self.form2(a, a) / 2
    }

    pub fn is_root(&self, a: &[i64]) -> bool {
        self.index.contains_key(a)
    }

    pub fn is_positive(a: &[i64]) -> bool {
        a.iter().any(|&x| x > 0) && a.iter().all(|&x| x >= 0)
    }

    pub fn is_negative(a: &[i64]) -> bool {
        a.iter().any(|&x| x < 0) && a.iter().all(|&x| x <= 0)
    }

    /// Position of `±α` in `positive_roots`, if `α` is a root.
    pub fn root_index(&self, a: &[i64]) -> Option<usize> {
        self.index.get(a).map(|k| k / 2)
    }

    /// All roots, positive first then their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|r| neg(r)));
        v
    }

    /// `⟨λ, α⟩`.
    pub fn pairing(&self, lambda: &[i64], alpha: &[i64]) -> i64 {
        dot(lambda, alpha)
    }

    /// `α^∨` in coweight coordinates, `(⟨α^∨, α_j⟩)_j`.
    pub fn coroot(&self, alpha: &[i64]) -> Result<Coweight> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(alpha.to_vec()));
        }
        Ok(self.coroot_unchecked(alpha))
    }

    pub(crate) fn coroot_unchecked(&self, alpha: &[i64]) -> Coweight {
        let nn = self.form2(alpha, alpha);
        (0..self.rank)
            .map(|j| {
                let num = 2 * self.form2(alpha, &unit(self.rank, j));
                assert!(num % nn == 0, "non-integral coroot pairing");
                num / nn
            })
            .collect()
    }

    /// Whether `α/2` is a root (so `α ∉ Φ_0`).
    pub fn half_is_root(&self, a: &[i64]) -> bool {
        a.iter().all(|x| x % 2 == 0) && self.is_root(&a.iter().map(|x| x / 2).collect::<Vec<_>>())
    }

    /// Whether `2α` is a root (so `α ∉ Φ_1`).
    pub fn double_is_root(&self, a: &[i64]) -> bool {
        !self.reduced && self.is_root(&a.iter().map(|x| 2 * x).collect::<Vec<_>>())
    }

    pub fn in_phi0(&self, a: &[i64]) -> bool {
        self.is_root(a) && !self.half_is_root(a)
    }

    pub fn in_phi1(&self, a: &[i64]) -> bool {
        self.is_root(a) && !self.double_is_root(a)
    }

    pub fn positive_phi0(&self) -> impl Iterator<Item = &Root> {
        self.positive_roots.iter().filter(move |r| !self.half_is_root(r))
    }

    pub fn positive_phi1(&self) -> impl Iterator<Item = &Root> {
        self.positive_roots.iter().filter(move |r| !self.double_is_root(r))
    }

    /// Long/short within `Φ_0`; in a single-length system every root is long.
    pub fn is_long_in_phi0(&self, a: &[i64]) -> bool {
        let max = self.positive_phi0().map(|r| self.norm(r)).max().unwrap();
        self.norm(a) == max
    }

    pub fn length_class(&self, a: &[i64]) -> LengthClass {
        if !self.reduced {
            if self.half_is_root(a) {
                LengthClass::Long
            } else if self.double_is_root(a) {
                LengthClass::Short
            } else {
                LengthClass::Middle
            }
        } else if self.is_long_in_phi0(a) {
            LengthClass::Long
        } else {
            LengthClass::Short
        }
    }

    /// Nodes (1-based) in the support of `α`.
    pub fn support(a: &[i64]) -> BTreeSet<usize> {
        a.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i + 1).collect()
    }

    /// Positive roots with support inside `J`.
    pub fn positive_roots_in(&self, j: &[usize]) -> Vec<Root> {
        self.positive_roots
            .iter()
            .filter(|r| r.iter().enumerate().all(|(i, &x)| x == 0 || j.contains(&(i + 1))))
            .cloned()
            .collect()
    }

    /// Connected components of `J` in the Dynkin diagram, each with the
    /// highest root of its sub-system.
    pub fn phi_components(&self, j: &[usize]) -> Vec<(Vec<usize>, Root)> {
        let mut left: BTreeSet<usize> = j.iter().copied().collect();
        let mut out = Vec::new();
        while let Some(&start) = left.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                if !left.remove(&x) {
                    continue;
                }
                comp.insert(x);
                for &y in left.iter() {
                    if self.cartan[x - 1][y - 1] != 0 {
                        stack.push(y);
                    }
                }
            }
            let comp: Vec<usize> = comp.into_iter().collect();
            let phi_k = self
                .positive_roots_in(&comp)
                .into_iter()
                .max_by(|a, b| (height(a), a).cmp(&(height(b), b)))
                .unwrap();
            out.push((comp, phi_k));
        }
        out
    }

    /// `(2ρ_J, 2ρ'_J)`: sums of the long, respectively short, positive roots of
    /// `Φ_J ∩ Φ_0`, as linear forms on coweights.
    pub fn rho_pair(&self, j: &[usize]) -> (Root, Root) {
        let mut rho = vec![0; self.rank];
        let mut rho_s = vec![0; self.rank];
        for r in self.positive_roots_in(j) {
            if self.half_is_root(&r) {
                continue;
            }
            let target = if self.is_long_in_phi0(&r) { &mut rho } else { &mut rho_s };
            for (t, x) in target.iter_mut().zip(&r) {
                *t += x;
            }
        }
        (rho, rho_s)
    }

    /// Whether nodes `i` and `j` are joined in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i - 1][j - 1] != 0
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn height(a: &[i64]) -> i64 {
    a.iter().sum()
}

pub fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
