//! Plain-text SVG pictures of rank 2 hyperplane arrangements, the
//! fundamental J-alcove and J-folded alcove paths.
//!
//! Coweights are placed in the plane by realising the simple roots with
//! their true lengths and angles; `ω_i` is the point pairing to `δ_{ij}`
//! with `α_j`. The viewBox is fixed by the bounding box of what is drawn.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::jgeom::JContext;
use crate::paths::{JFoldedPath, StepKind};
use crate::rootdata::Root;
use crate::weyl::ExtAffineElt;

type Pt = [f64; 2];

/// Pixels per unit of the planar realisation.
const SCALE: f64 = 60.0;

#[derive(Clone, Debug)]
pub struct ArrangementLine {
    /// A point on the line and its direction.
    pub through: Pt,
    pub direction: Pt,
    /// Every `H_{α,k}` that equals this line.
    pub names: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct PathMark {
    pub from: Pt,
    pub to: Pt,
    pub kind: StepKind,
}

/// Everything needed to draw one figure.
#[derive(Clone, Debug)]
pub struct SvgScene {
    pub title: String,
    pub lines: Vec<ArrangementLine>,
    /// Shaded polygon `𝒜_J ∩ box`.
    pub shaded: Vec<Pt>,
    pub alcoves: Vec<[Pt; 3]>,
    pub marks: Vec<PathMark>,
    pub bbox: [Pt; 2],
}

struct Plane {
    omega: [Pt; 2],
    alpha: [Pt; 2],
}

impl Plane {
    fn new(ctx: &JContext) -> Plane {
        let rs = ctx.rs();
        let g = |i: usize, j: usize| {
            let e = |k: usize| crate::rootdata::unit(2, k);
            rs.form2(&e(i), &e(j)) as f64 / 2.0
        };
        let a1 = [g(0, 0).sqrt(), 0.0];
        let x = g(0, 1) / a1[0];
        let a2 = [x, (g(1, 1) - x * x).sqrt()];
        // Solve (ω_i, α_j) = δ_ij.
        let det = a1[0] * a2[1] - a1[1] * a2[0];
        let w1 = [a2[1] / det, -a2[0] / det];
        let w2 = [-a1[1] / det, a1[0] / det];
        Plane { omega: [w1, w2], alpha: [a1, a2] }
    }

    fn point(&self, lambda: &[f64]) -> Pt {
        [
            lambda[0] * self.omega[0][0] + lambda[1] * self.omega[1][0],
            lambda[0] * self.omega[0][1] + lambda[1] * self.omega[1][1],
        ]
    }

    fn root(&self, a: &[i64]) -> Pt {
        [
            a[0] as f64 * self.alpha[0][0] + a[1] as f64 * self.alpha[1][0],
            a[0] as f64 * self.alpha[0][1] + a[1] as f64 * self.alpha[1][1],
        ]
    }

    /// Image of the fundamental alcove under `w`, in ω-coordinates.
    fn alcove(&self, ctx: &JContext, w: &ExtAffineElt) -> [Pt; 3] {
        let verts = fundamental_alcove(ctx);
        let cols: Vec<Vec<i64>> = (0..2).map(|i| w.lin.act_coweight(&crate::rootdata::unit(2, i))).collect();
        verts.map(|v| {
            let x: Vec<f64> = (0..2).map(|r| w.wt[r] as f64 + cols[0][r] as f64 * v[0] + cols[1][r] as f64 * v[1]).collect();
            self.point(&x)
        })
    }
}

/// Vertices of `A_0` in ω-coordinates: pairwise intersections of its walls.
fn fundamental_alcove(ctx: &JContext) -> [Pt; 3] {
    let walls: Vec<(Root, i64)> = (0..=2)
        .map(|i| {
            let a = ctx.aw.simple_affine_root(i);
            (a.linear.clone(), a.k)
        })
        .collect();
    let meet = |p: &(Root, i64), q: &(Root, i64)| -> Pt {
        // ⟨x, α⟩ + k = 0 with x in ω-coordinates is a_1 x_1 + a_2 x_2 = −k.
        let det = (p.0[0] * q.0[1] - p.0[1] * q.0[0]) as f64;
        let (r1, r2) = (-p.1 as f64, -q.1 as f64);
        [(r1 * q.0[1] as f64 - r2 * p.0[1] as f64) / det, (p.0[0] as f64 * r2 - q.0[0] as f64 * r1) / det]
    };
    [meet(&walls[1], &walls[2]), meet(&walls[0], &walls[2]), meet(&walls[0], &walls[1])]
}

fn root_name(a: &[i64]) -> String {
    format!("{}{}", a[0], a[1])
}

/// Sutherland–Hodgman clipping of a convex polygon by `n·x ≤ c`.
fn clip(poly: &[Pt], n: Pt, c: f64) -> Vec<Pt> {
    let f = |p: &Pt| n[0] * p[0] + n[1] * p[1] - c;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fp, fq) = (f(&p), f(&q));
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

fn centroid(t: &[Pt; 3]) -> Pt {
    [(t[0][0] + t[1][0] + t[2][0]) / 3.0, (t[0][1] + t[1][1] + t[2][1]) / 3.0]
}

impl SvgScene {
    /// Arrangement `H_{α,k}`, `α > 0`, `|k| ≤ bound`, the shaded J-alcove and
    /// optionally a path.
    pub fn new(ctx: &JContext, bound: i64, path: Option<&JFoldedPath>) -> Result<SvgScene> {
        if ctx.rank() != 2 {
            return Err(Error::Precondition(format!("pictures need rank 2, got rank {}", ctx.rank())));
        }
        let plane = Plane::new(ctx);
        let rs = ctx.rs();

        let mut alcoves = Vec::new();
        let mut marks = Vec::new();
        if let Some(p) = path {
            let verts = p.vertices(ctx);
            for v in &verts {
                let a = plane.alcove(ctx, v);
                if !alcoves.contains(&a) {
                    alcoves.push(a);
                }
            }
            for (s, pair) in p.steps.iter().zip(verts.windows(2)) {
                let from = centroid(&plane.alcove(ctx, &pair[0]));
                let to = if s.kind.is_crossing() {
                    centroid(&plane.alcove(ctx, &pair[1]))
                } else {
                    // Head toward the wall the step touches.
                    let nb = centroid(&plane.alcove(ctx, &pair[0].mul(ctx.aw.gen(s.node))));
                    [from[0] + 0.4 * (nb[0] - from[0]), from[1] + 0.4 * (nb[1] - from[1])]
                };
                marks.push(PathMark { from, to, kind: s.kind });
            }
        }

        // Box: the finite Weyl orbit of A_0 and the path, plus a margin.
        let mut pts: Vec<Pt> = Vec::new();
        for u in ctx.aw.finite_group() {
            pts.extend(plane.alcove(ctx, &ExtAffineElt::finite(u)));
        }
        for a in &alcoves {
            pts.extend(a.iter().copied());
        }
        let unit = plane.omega.iter().map(|w| w[0].hypot(w[1])).fold(0.0, f64::max);
        let margin = unit * (bound.max(1) as f64) * 0.5;
        let lo = [
            pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min) - margin,
            pts.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min) - margin,
        ];
        let hi = [
            pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max) + margin,
            pts.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max) + margin,
        ];

        // Group H_{α,k} by the line they define: the primitive root and level.
        let mut grouped: BTreeMap<(Root, i64, i64), Vec<String>> = BTreeMap::new();
        for a in &rs.positive_roots {
            let (prim, den) = if rs.half_is_root(a) { (a.iter().map(|x| x / 2).collect(), 2) } else { (a.clone(), 1) };
            for k in -bound..=bound {
                // ⟨x, a⟩ = k  ⇔  ⟨x, prim⟩ = k / den.
                let g = num_integer::gcd(k, den);
                grouped.entry((prim.clone(), k / g, den / g)).or_default().push(format!("H[{},{k}]", root_name(a)));
            }
        }
        let lines = grouped
            .into_iter()
            .map(|((prim, num, den), names)| {
                let n = plane.root(&prim);
                let level = num as f64 / den as f64;
                let nn = n[0] * n[0] + n[1] * n[1];
                ArrangementLine { through: [n[0] * level / nn, n[1] * level / nn], direction: [-n[1], n[0]], names }
            })
            .collect();

        let mut shaded = vec![lo, [hi[0], lo[1]], hi, [lo[0], hi[1]]];
        for w in &ctx.walls {
            let n = plane.root(&w.root);
            shaded = if w.level == 0 { clip(&shaded, [-n[0], -n[1]], 0.0) } else { clip(&shaded, n, w.level as f64) };
        }

        Ok(SvgScene {
            title: format!("{} J={:?}", rs.label(), ctx.j),
            lines,
            shaded,
            alcoves,
            marks,
            bbox: [lo, hi],
        })
    }
}

fn kind_style(k: StepKind) -> (&'static str, &'static str) {
    match k {
        StepKind::PositiveCrossing => ("positive-crossing", "#1f4e9c"),
        StepKind::NegativeCrossing => ("negative-crossing", "#b22222"),
        StepKind::Fold => ("fold", "#2e8b57"),
        StepKind::PositiveBounce => ("positive-bounce", "#d2691e"),
        StepKind::NegativeBounce => ("negative-bounce", "#8b008b"),
    }
}

/// Clip the line to the box; `None` if it misses.
fn segment(l: &ArrangementLine, lo: Pt, hi: Pt) -> Option<(Pt, Pt)> {
    let (p, d) = (l.through, l.direction);
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for ax in 0..2 {
        if d[ax].abs() < 1e-12 {
            if p[ax] < lo[ax] || p[ax] > hi[ax] {
                return None;
            }
        } else {
            let (a, b) = ((lo[ax] - p[ax]) / d[ax], (hi[ax] - p[ax]) / d[ax]);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
    }
    (t0 < t1).then(|| ([p[0] + t0 * d[0], p[1] + t0 * d[1]], [p[0] + t1 * d[0], p[1] + t1 * d[1]]))
}

/// SVG 1.1 text for the scene. The y axis points up.
pub fn emit_svg(scene: &SvgScene) -> String {
    let [lo, hi] = scene.bbox;
    let tx = |p: Pt| ((p[0] - lo[0]) * SCALE, (hi[1] - p[1]) * SCALE);
    let (w, h) = ((hi[0] - lo[0]) * SCALE, (hi[1] - lo[1]) * SCALE);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&scene.title));
    let _ = writeln!(
        s,
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="context-stroke"/></marker></defs>"##
    );
    if scene.shaded.len() >= 3 {
        let pts: Vec<String> = scene.shaded.iter().map(|&p| {
            let (x, y) = tx(p);
            format!("{x:.2},{y:.2}")
        }).collect();
        let _ = writeln!(s, r##"<polygon class="j-alcove" points="{}" fill="#e8e0c8" stroke="none"/>"##, pts.join(" "));
    }
    for l in &scene.lines {
        if let Some((a, b)) = segment(l, lo, hi) {
            let ((x1, y1), (x2, y2)) = (tx(a), tx(b));
            let _ = writeln!(
                s,
                r##"<line class="wall" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#888888" stroke-width="0.8"/>"##
            );
            let _ = writeln!(
                s,
                r#"<text class="wall-label" x="{x2:.2}" y="{y2:.2}" font-size="7" font-family="sans-serif">{}</text>"#,
                escape(&l.names.join(" = "))
            );
        }
    }
    for a in &scene.alcoves {
        let pts: Vec<String> = a.iter().map(|&p| {
            let (x, y) = tx(p);
            format!("{x:.2},{y:.2}")
        }).collect();
        let _ = writeln!(s, r##"<polygon class="alcove" points="{}" fill="none" stroke="#333333" stroke-width="1.2"/>"##, pts.join(" "));
    }
    for m in &scene.marks {
        let (class, colour) = kind_style(m.kind);
        let ((x1, y1), (x2, y2)) = (tx(m.from), tx(m.to));
        let _ = writeln!(
            s,
            r#"<line class="{class}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{colour}" stroke-width="2" marker-end="url(#arrow)"/>"#
        );
        if !m.kind.is_crossing() {
            let _ = writeln!(s, r#"<circle class="{class}" cx="{x2:.2}" cy="{y2:.2}" r="2.5" fill="{colour}"/>"#);
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
