//! J-parameter systems and the character `ψ_{J,v}`.
//!
//! A system assigns a signed monomial `v_α` to every `W_J`-orbit of `Φ_J`
//! (`v_α = 1` off `Φ_J`). Each value is kept twice: as a signed monomial in
//! `q` for a fixed weight function, and as a sign times a linear form in the
//! weight letters `(a, b, c)`, which is what the classification of bounded
//! systems works with.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jgeom::JContext;
use crate::laurent::SignedQMonomial;
use crate::rootdata::{dot, unit, RootSystem};
use crate::weyl::{AffineWeyl, FiniteWeylElt};

/// `sign · q^{f·(a,b,c)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymMono {
    pub sign: i8,
    pub form: [i64; 3],
}

impl SymMono {
    pub const ONE: SymMono = SymMono { sign: 1, form: [0; 3] };

    pub fn mul(self, o: SymMono) -> SymMono {
        SymMono { sign: self.sign * o.sign, form: [self.form[0] + o.form[0], self.form[1] + o.form[1], self.form[2] + o.form[2]] }
    }

    pub fn pow(self, k: i64) -> SymMono {
        SymMono {
            sign: if k.rem_euclid(2) == 1 { self.sign } else { 1 },
            form: [self.form[0] * k, self.form[1] * k, self.form[2] * k],
        }
    }

    pub fn inv(self) -> SymMono {
        self.pow(-1)
    }

    pub fn eval(self, abc: [i64; 3]) -> SignedQMonomial {
        SignedQMonomial::new(self.sign, self.form.iter().zip(abc).map(|(f, x)| f * x).sum())
    }

    /// The `q`-degree as a linear form.
    pub fn degree_form(self) -> [i64; 3] {
        self.form
    }
}

impl fmt::Display for SymMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, l) in self.form.iter().zip(['a', 'b', 'c']) {
            match c {
                0 => {}
                1 => parts.push(format!("{l}")),
                -1 => parts.push(format!("-{l}")),
                _ => parts.push(format!("{c}{l}")),
            }
        }
        let s = if self.sign < 0 { "-" } else { "" };
        if parts.is_empty() {
            write!(f, "{s}1")
        } else {
            write!(f, "{s}q^({})", parts.join("+").replace("+-", "-"))
        }
    }
}

/// The weight letter of a node as a unit vector in `(a, b, c)`.
pub fn letter_form(letter: char) -> [i64; 3] {
    match letter {
        'a' => [1, 0, 0],
        'b' => [0, 1, 0],
        _ => [0, 0, 1],
    }
}

/// Positive weights on `{0} ∪ I`, constant on parameter classes. Stored by
/// weight letter: `a` (short nodes, or node `n` in type BC), `b` (long or
/// middle nodes) and `c` (node 0 in type BC).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFunction {
    pub abc: [i64; 3],
    pub per_node: Vec<i64>,
}

impl WeightFunction {
    pub fn new(aw: &AffineWeyl, a: i64, b: i64, c: i64) -> Result<WeightFunction> {
        if a <= 0 || b <= 0 || c <= 0 {
            return Err(Error::InvalidParameters("weights must be positive".into()));
        }
        if !aw.rs.reduced && a < c {
            return Err(Error::InvalidParameters(format!("type BC needs L(s_n) ≥ L(s_0), got a={a} < c={c}")));
        }
        let abc = [a, b, c];
        let per_node = aw.letter.iter().map(|&l| dot(&letter_form(l), &abc)).collect();
        Ok(WeightFunction { abc, per_node })
    }

    pub fn equal(aw: &AffineWeyl) -> WeightFunction {
        Self::new(aw, 1, 1, 1).unwrap()
    }

    /// Builds from explicit per-node weights, checking class constancy.
    pub fn from_nodes(aw: &AffineWeyl, per_node: &[i64]) -> Result<WeightFunction> {
        if per_node.len() != aw.rank() + 1 {
            return Err(Error::InvalidParameters("one weight per node of {0} ∪ I expected".into()));
        }
        let mut abc = [1; 3];
        for (i, &w) in per_node.iter().enumerate() {
            for (k, &w2) in per_node.iter().enumerate() {
                if aw.class_of[i] == aw.class_of[k] && w != w2 {
                    return Err(Error::InvalidParameters(format!("nodes {i} and {k} share a parameter but differ")));
                }
            }
            abc[letter_form(aw.letter[i]).iter().position(|&x| x == 1).unwrap()] = w;
        }
        Self::new(aw, abc[0], abc[1], abc[2])
    }

    pub fn weight(&self, node: usize) -> i64 {
        self.per_node[node]
    }
}

/// One independent sign choice of a parameter system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dof {
    /// Node label (`"j"` for `ψ(T_j)`, `"2n"` for `v_{2α_n}`).
    pub key: String,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JParamSystem {
    pub dofs: Vec<Dof>,
    /// Symbolic value per orbit of [`JContext::orbit_reps`].
    pub sym: Vec<SymMono>,
    /// Weighted value per orbit.
    pub vals: Vec<SignedQMonomial>,
    pub weights: WeightFunction,
}

/// Orbit kinds that carry a free sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OrbitKind {
    /// Contains the simple root `α_j` with `2α_j ∉ Φ_J`.
    Simple(usize),
    /// Orbit of `α_n` in a non-reduced component.
    BcShort,
    /// Orbit of `2α_n`.
    BcLong,
}

fn orbit_kinds(ctx: &JContext) -> Vec<OrbitKind> {
    let n = ctx.rank();
    let rs = ctx.rs();
    ctx.orbit_reps
        .iter()
        .enumerate()
        .map(|(o, _)| {
            for &j in &ctx.j {
                let a = unit(n, j - 1);
                if ctx.orbit_of(&a) == Some(o) {
                    return if rs.double_is_root(&a) { OrbitKind::BcShort } else { OrbitKind::Simple(j) };
                }
            }
            let a2: Vec<i64> = unit(n, n - 1).iter().map(|x| 2 * x).collect();
            assert_eq!(ctx.orbit_of(&a2), Some(o), "every W_J-orbit meets a simple root or 2α_n");
            OrbitKind::BcLong
        })
        .collect()
}

/// Ordered list of sign keys for the context.
pub fn dof_keys(ctx: &JContext) -> Vec<String> {
    let mut keys = Vec::new();
    for k in orbit_kinds(ctx) {
        match k {
            OrbitKind::Simple(j) => keys.push(j.to_string()),
            OrbitKind::BcShort => keys.push(ctx.rank().to_string()),
            OrbitKind::BcLong => keys.push("2n".to_string()),
        }
    }
    keys.sort_by_key(|k| (k == "2n", k.parse::<usize>().unwrap_or(0)));
    keys
}

fn hecke_sym(positive: bool, form: [i64; 3]) -> SymMono {
    if positive {
        SymMono { sign: 1, form }
    } else {
        SymMono { sign: -1, form: form.map(|x| -x) }
    }
}

impl JParamSystem {
    /// Builds a system from sign choices; missing keys default to `−`.
    pub fn from_signs(ctx: &JContext, weights: &WeightFunction, signs: &BTreeMap<String, bool>) -> Result<JParamSystem> {
        let keys = dof_keys(ctx);
        for k in signs.keys() {
            if !keys.contains(k) {
                return Err(Error::InvalidParameters(format!("no free sign named {k:?} (available: {keys:?})")));
            }
        }
        let dofs: Vec<Dof> =
            keys.iter().map(|k| Dof { key: k.clone(), positive: signs.get(k).copied().unwrap_or(false) }).collect();
        let sign_of = |k: &str| dofs.iter().find(|d| d.key == k).is_some_and(|d| d.positive);
        let n = ctx.rank();
        let letter = |j: usize| letter_form(ctx.aw.letter[j]);
        let kinds = orbit_kinds(ctx);
        let long = hecke_sym(sign_of("2n"), letter(0));
        let sym: Vec<SymMono> = kinds
            .iter()
            .map(|k| match *k {
                OrbitKind::Simple(j) => hecke_sym(sign_of(&j.to_string()), letter(j)),
                OrbitKind::BcLong => long,
                OrbitKind::BcShort => hecke_sym(sign_of(&n.to_string()), letter(n)).mul(long.inv()),
            })
            .collect();
        let vals = sym.iter().map(|s| s.eval(weights.abc)).collect();
        Ok(JParamSystem { dofs, sym, vals, weights: weights.clone() })
    }

    /// Parses sign strings keyed by node (`"1"`, `"alpha1"`), `"alphan*2alphan"`
    /// for `ψ(T_n)` and `"2n"`/`"2alphan"` for `v_{2α_n}`; values are `+` or `-`.
    pub fn from_sign_strings(
        ctx: &JContext,
        weights: &WeightFunction,
        signs: &BTreeMap<String, String>,
    ) -> Result<JParamSystem> {
        let n = ctx.rank();
        let mut parsed = BTreeMap::new();
        for (k, v) in signs {
            let key = match k.as_str() {
                "alphan*2alphan" => n.to_string(),
                "2alphan" | "2n" => "2n".to_string(),
                other => other.trim_start_matches("alpha").to_string(),
            };
            let positive = match v.trim() {
                "+" => true,
                "-" | "−" => false,
                bad => return Err(Error::InvalidParameters(format!("sign for {k} must be + or -, got {bad:?}"))),
            };
            // Nodes in the same orbit share one sign.
            let canonical = canonical_key(ctx, &key)?;
            if let Some(prev) = parsed.insert(canonical.clone(), positive) {
                if prev != positive {
                    return Err(Error::InvalidParameters(format!("conflicting signs for the orbit of {canonical}")));
                }
            }
        }
        Self::from_signs(ctx, weights, &parsed)
    }

    /// All systems, ordered by the bit pattern of signs (`−` first); the first
    /// one is the all-negative system `v̂`.
    pub fn enumerate(ctx: &JContext, weights: &WeightFunction) -> Vec<JParamSystem> {
        let keys = dof_keys(ctx);
        (0u64..1 << keys.len())
            .map(|mask| {
                let signs = keys.iter().enumerate().map(|(i, k)| (k.clone(), mask >> i & 1 == 1)).collect();
                Self::from_signs(ctx, weights, &signs).expect("keys come from the context")
            })
            .collect()
    }

    pub fn all_negative(ctx: &JContext, weights: &WeightFunction) -> JParamSystem {
        Self::from_signs(ctx, weights, &BTreeMap::new()).unwrap()
    }

    pub fn is_all_negative(&self) -> bool {
        self.dofs.iter().all(|d| !d.positive)
    }

    /// Short label such as `"1:- 2n:+"`.
    pub fn label(&self) -> String {
        if self.dofs.is_empty() {
            return "∅".into();
        }
        self.dofs.iter().map(|d| format!("{}:{}", d.key, if d.positive { '+' } else { '-' })).collect::<Vec<_>>().join(" ")
    }

    pub fn v_sym(&self, ctx: &JContext, a: &[i64]) -> SymMono {
        ctx.orbit_of(a).map_or(SymMono::ONE, |o| self.sym[o])
    }

    pub fn v(&self, ctx: &JContext, a: &[i64]) -> SignedQMonomial {
        ctx.orbit_of(a).map_or(SignedQMonomial::ONE, |o| self.vals[o])
    }

    /// `v_α v_{2α}`.
    pub fn v_pair_sym(&self, ctx: &JContext, a: &[i64]) -> SymMono {
        let d: Vec<i64> = a.iter().map(|x| 2 * x).collect();
        self.v_sym(ctx, a).mul(self.v_sym(ctx, &d))
    }

    pub fn v_pair(&self, ctx: &JContext, a: &[i64]) -> SignedQMonomial {
        self.v_pair_sym(ctx, a).eval(self.weights.abc)
    }

    /// `v^λ = ∏_{α ∈ Φ_J^+} v_α^{⟨λ,α⟩}`.
    pub fn v_power_sym(&self, ctx: &JContext, lambda: &[i64]) -> SymMono {
        ctx.rs()
            .positive_roots_in(&ctx.j)
            .iter()
            .fold(SymMono::ONE, |acc, a| acc.mul(self.v_sym(ctx, a).pow(dot(lambda, a))))
    }

    pub fn v_power(&self, ctx: &JContext, lambda: &[i64]) -> SignedQMonomial {
        self.v_power_sym(ctx, lambda).eval(self.weights.abc)
    }

    /// `v(y) = ∏_{α ∈ Φ(y)} v_α v_{2α}` for `y ∈ W_J`.
    pub fn v_of_elt_sym(&self, ctx: &JContext, y: &FiniteWeylElt) -> Result<SymMono> {
        let mut acc = SymMono::ONE;
        for a in ctx.rs().positive_phi0() {
            if RootSystem::is_negative(&y.act_root_inv(a)) {
                if ctx.orbit_of(a).is_none() {
                    return Err(Error::Precondition("element is not in W_J".into()));
                }
                acc = acc.mul(self.v_pair_sym(ctx, a));
            }
        }
        Ok(acc)
    }

    pub fn v_of_elt(&self, ctx: &JContext, y: &FiniteWeylElt) -> Result<SignedQMonomial> {
        Ok(self.v_of_elt_sym(ctx, y)?.eval(self.weights.abc))
    }

    /// `ψ(T_j) = v_{α_j} v_{2α_j}`.
    pub fn psi_t(&self, ctx: &JContext, j: usize) -> SignedQMonomial {
        self.v_pair(ctx, &unit(ctx.rank(), j - 1))
    }

    /// `ψ(X^λ) = v^λ ζ^λ`.
    pub fn psi_x(&self, ctx: &JContext, lambda: &[i64]) -> (SignedQMonomial, Vec<i64>) {
        (self.v_power(ctx, lambda), ctx.zeta_exponent(lambda))
    }

    /// `ψ(T'_{0_K}) = v_{φ_K}`.
    pub fn psi_t0(&self, ctx: &JContext, component: usize) -> SignedQMonomial {
        self.v(ctx, &ctx.components[component].1)
    }
}

fn canonical_key(ctx: &JContext, key: &str) -> Result<String> {
    if key == "2n" {
        return Ok(key.into());
    }
    let n = ctx.rank();
    let j: usize = key.parse().map_err(|_| Error::InvalidParameters(format!("unknown sign key {key:?}")))?;
    if !ctx.contains(j) {
        return Err(Error::InvalidParameters(format!("node {j} is not in J")));
    }
    let a = unit(n, j - 1);
    if ctx.rs().double_is_root(&a) {
        return Ok(j.to_string());
    }
    let o = ctx.orbit_of(&a).unwrap();
    let first = ctx.j.iter().find(|&&x| ctx.orbit_of(&unit(n, x - 1)) == Some(o)).unwrap();
    Ok(first.to_string())
}
