//! J-folded alcove paths.
//!
//! A path of type `s_{i_1} ⋯ s_{i_ℓ} σ` from `v ∈ 𝕎^J` is a sequence
//! `v_0, …, v_ℓ` in `𝕎^J` where each step from `x = v_{k−1}` either crosses to
//! `x s_{i_k}` or stays. Staying is a fold when `x s_{i_k} ∈ 𝕎^J` (allowed only
//! on the positive side) and a forced bounce when `x s_{i_k} ∉ 𝕎^J`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jgeom::{FundamentalDomain, JContext};
use crate::jparam::JParamSystem;
use crate::laurent::QLaurent;
use crate::rootdata::{Coweight, Root, RootSystem};
use crate::weyl::ExtAffineElt;

/// `s_{i_1} ⋯ s_{i_ℓ} σ`; `sigma` indexes [`crate::weyl::AffineWeyl::sigma_group`]
/// (index 0 is the identity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    pub letters: Vec<usize>,
    pub sigma: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Word {
        Word { letters, sigma: 0 }
    }

    pub fn with_sigma(letters: Vec<usize>, sigma: usize) -> Word {
        Word { letters, sigma }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        if self.sigma != 0 {
            write!(f, "·σ{}", self.sigma)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    PositiveCrossing,
    NegativeCrossing,
    Fold,
    PositiveBounce,
    NegativeBounce,
}

impl StepKind {
    pub fn is_crossing(self) -> bool {
        matches!(self, StepKind::PositiveCrossing | StepKind::NegativeCrossing)
    }

    pub fn is_bounce(self) -> bool {
        matches!(self, StepKind::PositiveBounce | StepKind::NegativeBounce)
    }
}

/// A hyperplane `⟨x, root⟩ = level` with `root ∈ Φ_1^+`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hyperplane {
    pub root: Root,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub index: usize,
    pub node: usize,
    pub kind: StepKind,
    /// Present for bounces.
    pub wall: Option<Hyperplane>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JFoldedPath {
    pub start: ExtAffineElt,
    pub word: Word,
    pub steps: Vec<Step>,
    pub end: ExtAffineElt,
    /// `f_i` for every node of `{0} ∪ I`.
    pub fold_counts: Vec<u32>,
    /// `b_α` per `W_J`-orbit of [`JContext::orbit_reps`]; a bounce on a wall
    /// shared by `α` and `2α` counts for both orbits.
    pub bounce_counts: Vec<u32>,
}

/// The hyperplane separating `xA_0` and `x s_i A_0`.
pub fn separating_hyperplane(ctx: &JContext, x: &ExtAffineElt, i: usize) -> Hyperplane {
    let a = ctx.aw.act_on_affine_root(x, ctx.aw.simple_affine_root(i));
    // {y : ⟨y, β⟩ + m = 0}.
    let (mut root, mut level) = (a.linear, -a.k);
    if ctx.rs().double_is_root(&root) {
        root.iter_mut().for_each(|c| *c *= 2);
        level *= 2;
    }
    if RootSystem::is_negative(&root) {
        root.iter_mut().for_each(|c| *c = -*c);
        level = -level;
    }
    Hyperplane { root, level }
}

/// Orbits of `Φ_J` attached to a hyperplane: `γ`, and `γ/2` when the level
/// is even and `γ/2` is a root.
fn wall_orbits(ctx: &JContext, h: &Hyperplane) -> Vec<usize> {
    let mut out = Vec::new();
    if let Some(o) = ctx.orbit_of(&h.root) {
        out.push(o);
    }
    if h.level % 2 == 0 && h.root.iter().all(|c| c % 2 == 0) {
        let half: Vec<i64> = h.root.iter().map(|c| c / 2).collect();
        if let Some(o) = ctx.orbit_of(&half) {
            out.push(o);
        }
    }
    out
}

/// The choice made at a step: move to `x s_i` or stay.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Choice {
    Cross,
    Stay,
}

impl JFoldedPath {
    /// Replays a sequence of cross/stay choices; `None` if the choices violate
    /// the folding rules.
    fn replay(ctx: &JContext, start: &ExtAffineElt, word: &Word, choices: &[Choice]) -> Option<JFoldedPath> {
        let n = ctx.rank();
        let mut x = start.clone();
        let mut steps = Vec::with_capacity(word.len());
        let mut fold_counts = vec![0; n + 1];
        let mut bounce_counts = vec![0; ctx.num_orbits()];
        for (k, (&i, &c)) in word.letters.iter().zip(choices).enumerate() {
            let xs = x.mul(ctx.aw.gen(i));
            let positive = ctx.aw.crossing_sign(&x, i) > 0;
            let (kind, wall) = if ctx.in_wbbj(&xs) {
                match (c, positive) {
                    (Choice::Cross, true) => (StepKind::PositiveCrossing, None),
                    (Choice::Cross, false) => (StepKind::NegativeCrossing, None),
                    (Choice::Stay, false) => (StepKind::Fold, None),
                    (Choice::Stay, true) => return None,
                }
            } else {
                if c == Choice::Cross {
                    return None;
                }
                let h = separating_hyperplane(ctx, &x, i);
                let kind = if positive { StepKind::NegativeBounce } else { StepKind::PositiveBounce };
                (kind, Some(h))
            };
            match kind {
                StepKind::Fold => fold_counts[i] += 1,
                StepKind::PositiveBounce | StepKind::NegativeBounce => {
                    for o in wall_orbits(ctx, wall.as_ref().unwrap()) {
                        bounce_counts[o] += 1;
                    }
                }
                _ => x = xs,
            }
            steps.push(Step { index: k + 1, node: i, kind, wall });
        }
        let end = x.mul(&ctx.aw.sigma_group()[word.sigma].as_element);
        Some(JFoldedPath { start: start.clone(), word: word.clone(), steps, end, fold_counts, bounce_counts })
    }

    fn choices(&self) -> Vec<Choice> {
        self.steps.iter().map(|s| if s.kind.is_crossing() { Choice::Cross } else { Choice::Stay }).collect()
    }

    /// The intermediate elements `v_0, …, v_ℓ`.
    pub fn vertices(&self, ctx: &JContext) -> Vec<ExtAffineElt> {
        let mut out = vec![self.start.clone()];
        let mut x = self.start.clone();
        for s in &self.steps {
            if s.kind.is_crossing() {
                x = x.mul(ctx.aw.gen(s.node));
            }
            out.push(x.clone());
        }
        out
    }

    pub fn num_folds(&self) -> u32 {
        self.fold_counts.iter().sum()
    }

    pub fn num_bounces(&self) -> usize {
        self.steps.iter().filter(|s| s.kind.is_bounce()).count()
    }

    /// Letters with `̂` on folds and `̌` on bounces.
    pub fn pattern(&self) -> String {
        let mut s = String::new();
        for st in &self.steps {
            s.push_str(&st.node.to_string());
            match st.kind {
                StepKind::Fold => s.push('\u{302}'),
                StepKind::PositiveBounce | StepKind::NegativeBounce => s.push('\u{30c}'),
                _ => {}
            }
        }
        s
    }

    /// `Q_{J,v}(p) = ∏ v_α^{b_α(p)} ∏ (q_i − q_i^{-1})^{f_i(p)}`.
    pub fn mass(&self, ctx: &JContext, v: &JParamSystem) -> QLaurent {
        mass_from_counts(ctx.zeta_arity(), v, &self.fold_counts, &self.bounce_counts)
    }

    /// `(wt(p, F), θ(p, F))`, the latter as an index into `F`.
    pub fn wt_theta(&self, ctx: &JContext, domain: &FundamentalDomain) -> Result<(Coweight, usize)> {
        domain.locate(ctx, &self.end)
    }

    /// `𝗍_λ · p`.
    pub fn tj_act(&self, ctx: &JContext, lambda: &[i64]) -> Result<JFoldedPath> {
        let t = ctx.t_of(lambda)?;
        let start = t.mul(&self.start);
        JFoldedPath::replay(ctx, &start, &self.word, &self.choices())
            .ok_or_else(|| Error::Precondition("translated choices are not a J-folded path".into()))
    }

    /// Removes all bounces by reflecting the remainder of the path in each
    /// bounce wall.
    pub fn straighten(&self, ctx: &JContext) -> StraightenedPath {
        let mut g = ctx.aw.identity();
        let mut x = self.start.clone();
        let mut steps = Vec::with_capacity(self.steps.len());
        let mut fold_counts = vec![0; ctx.rank() + 1];
        let mut crossing_counts: BTreeMap<Hyperplane, u32> = BTreeMap::new();
        let mut y = self.start.clone();
        for s in &self.steps {
            let i = s.node;
            let kind = match s.kind {
                StepKind::Fold => {
                    fold_counts[i] += 1;
                    StepKind::Fold
                }
                StepKind::PositiveCrossing | StepKind::NegativeCrossing => {
                    x = x.mul(ctx.aw.gen(i));
                    let k = if ctx.aw.crossing_sign(&y, i) > 0 { StepKind::PositiveCrossing } else { StepKind::NegativeCrossing };
                    y = g.mul(&x);
                    k
                }
                StepKind::PositiveBounce | StepKind::NegativeBounce => {
                    let refl = x.mul(ctx.aw.gen(i)).mul(&x.inverse());
                    g = g.mul(&refl);
                    let k = if ctx.aw.crossing_sign(&y, i) > 0 { StepKind::PositiveCrossing } else { StepKind::NegativeCrossing };
                    y = g.mul(&x);
                    k
                }
            };
            if kind.is_crossing() {
                // Hyperplane crossed by the straightened path, seen from its previous vertex.
                let prev = y.mul(ctx.aw.gen(i));
                let h = separating_hyperplane(ctx, &prev, i);
                if !wall_orbits(ctx, &h).is_empty() {
                    *crossing_counts.entry(h).or_default() += 1;
                }
            }
            steps.push(Step { index: s.index, node: i, kind, wall: None });
        }
        let end = y.mul(&ctx.aw.sigma_group()[self.word.sigma].as_element);
        StraightenedPath {
            path: JFoldedPath {
                start: self.start.clone(),
                word: self.word.clone(),
                steps,
                end,
                fold_counts,
                bounce_counts: vec![0; ctx.num_orbits()],
            },
            crossing_counts,
        }
    }
}

/// Positively folded path with no folds on `Φ_J`-walls, together with the
/// number of crossings of each `Φ_J + ℤδ` hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StraightenedPath {
    pub path: JFoldedPath,
    pub crossing_counts: BTreeMap<Hyperplane, u32>,
}

impl StraightenedPath {
    /// `∏ v_{α−kδ}^{c_{α,k}}`.
    pub fn wall_factor(&self, ctx: &JContext, v: &JParamSystem) -> QLaurent {
        let mut counts = vec![0; ctx.num_orbits()];
        for (h, c) in &self.crossing_counts {
            for o in wall_orbits(ctx, h) {
                counts[o] += c;
            }
        }
        mass_from_counts(ctx.zeta_arity(), v, &vec![0; ctx.rank() + 1], &counts)
    }

    /// `Q(p_J)`, the fold part of the mass.
    pub fn fold_factor(&self, ctx: &JContext, v: &JParamSystem) -> QLaurent {
        mass_from_counts(ctx.zeta_arity(), v, &self.path.fold_counts, &vec![0; ctx.num_orbits()])
    }
}

/// Inverse of [`JFoldedPath::straighten`]: forces bounces on the walls of
/// `𝒜_J`. The input must be positively folded, start in `𝕎^J`, and have no
/// folds on `Φ_J`-walls.
pub fn unstraighten(ctx: &JContext, p: &JFoldedPath) -> Result<JFoldedPath> {
    if !ctx.in_wbbj(&p.start) {
        return Err(Error::Precondition("start is not in 𝕎^J".into()));
    }
    let mut g = ctx.aw.identity();
    let mut y = p.start.clone();
    let mut choices = Vec::new();
    for s in &p.steps {
        let i = s.node;
        let x = g.inverse().mul(&y);
        let xs = x.mul(ctx.aw.gen(i));
        match s.kind {
            StepKind::Fold => {
                if ctx.aw.crossing_sign(&y, i) > 0 {
                    return Err(Error::Precondition("input path is not positively folded".into()));
                }
                if !ctx.in_wbbj(&xs) {
                    return Err(Error::Precondition("input path folds on a Φ_J-wall".into()));
                }
                choices.push(Choice::Stay);
            }
            StepKind::PositiveCrossing | StepKind::NegativeCrossing => {
                y = y.mul(ctx.aw.gen(i));
                if ctx.in_wbbj(&xs) {
                    choices.push(Choice::Cross);
                } else {
                    g = g.mul(&xs.mul(&x.inverse()));
                    choices.push(Choice::Stay);
                }
            }
            _ => return Err(Error::Precondition("input path has bounces".into())),
        }
    }
    JFoldedPath::replay(ctx, &p.start, &p.word, &choices)
        .ok_or_else(|| Error::Precondition("input does not unstraighten to a J-folded path".into()))
}

/// The product of bounce values and fold factors for the given counts.
pub fn mass_from_counts(arity: usize, v: &JParamSystem, folds: &[u32], bounces: &[u32]) -> QLaurent {
    let mut sign = 1i64;
    let mut q = 0i64;
    for (o, &b) in bounces.iter().enumerate() {
        if b > 0 {
            let m = v.vals[o].pow(b as i64);
            sign *= m.sign as i64;
            q += m.q_exp;
        }
    }
    let mut out = QLaurent::monomial(arity, sign, q, &vec![0; arity]);
    for (i, &f) in folds.iter().enumerate() {
        if f > 0 {
            out = &out * &QLaurent::q_minus_qinv(arity, v.weights.weight(i)).pow(f);
        }
    }
    out
}

/// All J-folded alcove paths of the given type from `start`, depth first with
/// crossings explored before folds. With a filter `(f, F)` only paths with
/// `θ(p, F) = F[f]` are returned.
pub fn enumerate(
    ctx: &JContext,
    word: &Word,
    start: &ExtAffineElt,
    filter: Option<(usize, &FundamentalDomain)>,
) -> Result<Vec<JFoldedPath>> {
    if !ctx.in_wbbj(start) {
        return Err(Error::Precondition("start is not in 𝕎^J".into()));
    }
    for &i in &word.letters {
        if i > ctx.rank() {
            return Err(Error::InvalidNode(i));
        }
    }
    if word.sigma >= ctx.aw.sigma_group().len() {
        return Err(Error::Precondition(format!("no diagram automorphism with index {}", word.sigma)));
    }
    let mut out = Vec::new();
    let mut choices = Vec::with_capacity(word.len());
    dfs(ctx, word, start.clone(), &mut choices, &mut out);
    let mut paths: Vec<JFoldedPath> =
        out.into_iter().map(|c| JFoldedPath::replay(ctx, start, word, &c).expect("search respects the rules")).collect();
    if let Some((target, dom)) = filter {
        let mut kept = Vec::new();
        for p in paths {
            if p.wt_theta(ctx, dom)?.1 == target {
                kept.push(p);
            }
        }
        paths = kept;
    }
    Ok(paths)
}

fn dfs(ctx: &JContext, word: &Word, x: ExtAffineElt, choices: &mut Vec<Choice>, out: &mut Vec<Vec<Choice>>) {
    let k = choices.len();
    if k == word.len() {
        out.push(choices.clone());
        return;
    }
    let i = word.letters[k];
    let xs = x.mul(ctx.aw.gen(i));
    if ctx.in_wbbj(&xs) {
        let positive = ctx.aw.crossing_sign(&x, i) > 0;
        choices.push(Choice::Cross);
        dfs(ctx, word, xs, choices, out);
        choices.pop();
        if !positive {
            choices.push(Choice::Stay);
            dfs(ctx, word, x, choices, out);
            choices.pop();
        }
    } else {
        choices.push(Choice::Stay);
        dfs(ctx, word, x, choices, out);
        choices.pop();
    }
}

/// Mass-independent summary of a path, enough to evaluate its contribution
/// for any parameter system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathShape {
    pub fold_counts: Vec<u32>,
    pub bounce_counts: Vec<u32>,
    pub end: ExtAffineElt,
}

impl From<&JFoldedPath> for PathShape {
    fn from(p: &JFoldedPath) -> Self {
        PathShape { fold_counts: p.fold_counts.clone(), bounce_counts: p.bounce_counts.clone(), end: p.end.clone() }
    }
}
