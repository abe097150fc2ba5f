//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use alcove_hecke::bounds::{self, conjectural_bound, empirical_search, integer_rank, is_bounded, l_w0};
use alcove_hecke::heckemod::paths_by_row;
use alcove_hecke::laurent::rational_degree;
use alcove_hecke::paths::{enumerate, unstraighten};
use alcove_hecke::rootdata::unit;
use alcove_hecke::*;
use rand::{Rng, SeedableRng};

type Outcome = std::result::Result<String, String>;

const GRID_TYPES: &[&str] = &["A2", "A3", "C2", "BC2", "G2"];

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n).map(|m| (1..=n).filter(|&i| m & (1 << (i - 1)) != 0).collect()).collect()
}

/// Distinct weight functions with `a, b, c ∈ {1, 2, 3}`.
fn weight_grid(aw: &AffineWeyl) -> Vec<WeightFunction> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                if let Ok(w) = WeightFunction::new(aw, a, b, c) {
                    if seen.insert(w.per_node.clone()) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

fn ctx(l: &str, j: &[usize]) -> JContext {
    JContext::from_label(l, j).unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1 ---------------------------------------------------------------------------

fn cancellation() -> Outcome {
    let start = Instant::now();
    let c = ctx("A3", &[1]);
    let dom = c.default_domain();
    let e = c.aw.identity();
    let ps = enumerate(&c, &Word::new(vec![3, 2, 3, 1, 2, 3]), &e, Some((0, &dom))).map_err(|e| e.to_string())?;
    check(ps.len() == 5, || format!("{} paths", ps.len()))?;
    let v = JParamSystem::all_negative(&c, &WeightFunction::equal(&c.aw));
    let a = c.zeta_arity();
    let d = QLaurent::q_minus_qinv(a, 1);
    let mq = QLaurent::monomial(a, -1, -1, &vec![0; a]);
    let want: BTreeMap<&str, QLaurent> = [
        ("3̂2̂3̂1̌2̂3̂", &mq * &d.pow(5)),
        ("3̂23̂1̂23̂", d.pow(4)),
        ("3̂2̂31̌2̂3", &mq * &d.pow(3)),
        ("32̂31̌2̂3̂", &mq * &d.pow(3)),
        ("323̂1̂23", d.pow(2)),
    ]
    .into_iter()
    .collect();
    let mut sum = QLaurent::zero(a);
    for p in &ps {
        let pat = p.pattern();
        let m = p.mass(&c, &v);
        check(want.get(pat.as_str()) == Some(&m), || format!("path {pat} has mass {m}"))?;
        sum = &sum + &m;
    }
    check(sum == &QLaurent::q_pow(a, -4) * &d.pow(2), || format!("sum {sum}"))?;
    check(sum.q_degree() == DegreeValue::Int(-2), || "degree".into())?;
    let t = start.elapsed().as_secs_f64();
    check(t < 1.0, || format!("took {t:.2}s"))?;
    Ok(format!("5 paths, sum {sum}"))
}

// 2 ---------------------------------------------------------------------------

fn paths_equal_products() -> Outcome {
    let mut compared = 0usize;
    for &l in GRID_TYPES {
        let aw = AffineWeyl::from_label(l).unwrap();
        let weights = weight_grid(&aw);
        let n = aw.rank();
        let nsig = aw.sigma_group().len();
        for j in subsets(n) {
            let c = ctx(l, &j);
            let dom = c.default_domain();
            let ball: Vec<ExtAffineElt> = c.aw.ball(6).into_iter().flatten().collect();
            // Path enumeration depends only on the type and the start.
            let mut enumerated = Vec::new();
            for x in &ball {
                let (letters, _) = c.aw.reduced_word(x);
                for s in 0..nsig {
                    let word = Word::with_sigma(letters.clone(), s);
                    enumerated.push((x.clone(), s, paths_by_row(&c, &dom, &word).map_err(|e| e.to_string())?));
                }
            }
            for w in &weights {
                for v in JParamSystem::enumerate(&c, w) {
                    let rep = HeckeRep::new(&c, &v, &dom);
                    let products: BTreeMap<ExtAffineElt, RepMatrix> =
                        rep.tw_ball(6).into_iter().flatten().collect();
                    for (x, s, rows) in &enumerated {
                        let want = &products[x] * rep.sigma_matrix(*s);
                        let got = rep.matrix_from_paths(rows).map_err(|e| e.to_string())?;
                        check(got == want, || format!("{l} J={j:?} {} w={x:?} σ={s}", v.label()))?;
                        compared += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{compared} matrices"))
}

// 3 ---------------------------------------------------------------------------

fn relations() -> Outcome {
    let mut reps = 0usize;
    let mut bl_branches = BTreeSet::new();
    for &l in GRID_TYPES {
        let aw = AffineWeyl::from_label(l).unwrap();
        let n = aw.rank();
        let lambdas: Vec<Vec<i64>> = {
            let mut out = Vec::new();
            for i in 0..n {
                out.push(unit(n, i));
                out.push(unit(n, i).iter().map(|x| -2 * x).collect());
                for k in 0..n {
                    if k != i {
                        out.push(unit(n, i).iter().zip(unit(n, k)).map(|(a, b)| a - 2 * b).collect());
                    }
                }
            }
            out
        };
        for j in subsets(n) {
            let c = ctx(l, &j);
            let dom = c.default_domain();
            for w in weight_grid(&aw) {
                for v in JParamSystem::enumerate(&c, &w) {
                    let rep = HeckeRep::new(&c, &v, &dom);
                    let tag = || format!("{l} J={j:?} abc={:?} {}", w.abc, v.label());
                    let failed = rep.check_relations();
                    check(failed.is_empty(), || format!("{} {failed:?}", tag()))?;
                    let xs: Vec<RepMatrix> = lambdas.iter().map(|lam| rep.matrix_of_x(lam)).collect();
                    for a in 0..xs.len() {
                        for b in a + 1..xs.len() {
                            check(&xs[a] * &xs[b] == &xs[b] * &xs[a], || format!("{} X commutativity", tag()))?;
                        }
                    }
                    for i in 1..=n {
                        for lam in &lambdas {
                            let pairing = lam[i - 1];
                            let (lhs, rhs) = rep.bernstein_lusztig_sides(i, lam);
                            check(lhs == rhs, || format!("{} Bernstein-Lusztig i={i} λ={lam:?}", tag()))?;
                            bl_branches.insert(pairing.signum());
                        }
                        let t = rep.matrix_of_tau(i);
                        check(&t * &t == rep.tau_square_rhs(i), || format!("{} τ_{i}²", tag()))?;
                    }
                    reps += 1;
                }
            }
        }
    }
    check(bl_branches.contains(&1) && bl_branches.contains(&-1), || "a Bernstein-Lusztig branch was not exercised".into())?;
    Ok(format!("{reps} representations"))
}

// 4 ---------------------------------------------------------------------------

fn type_a_cell() -> Outcome {
    let mut notes = Vec::new();
    for n in 2..=3usize {
        let j: Vec<usize> = (1..n).collect();
        let c = ctx(&format!("A{n}"), &j);
        let w = WeightFunction::equal(&c.aw);
        let v = JParamSystem::all_negative(&c, &w);
        let dom = c.sigma_domain().map_err(|e| e.to_string())?;
        let rep = HeckeRep::new(&c, &v, &dom);
        let a = rep.arity();
        let z = c.zeta_exponent(&unit(n, 0));
        let zi: Vec<i64> = z.iter().map(|x| -x).collect();
        let zeta = QLaurent::zeta(&z);
        let zeta_inv = QLaurent::zeta(&zi);
        let mq = QLaurent::monomial(a, -1, -1, &vec![0; a]);
        let d = QLaurent::q_minus_qinv(a, 1);
        let dim = n + 1;
        // Generator matrices in the ordered basis σ^{-1}, …, σ^{-(n+1)}.
        for i in 0..=n {
            let mut want = RepMatrix::zero(dim, a);
            if i == 0 {
                want.entries[0][0] = d.clone();
                want.entries[0][n] = zeta_inv.clone();
                want.entries[n][0] = zeta.clone();
                for k in 1..n {
                    want.entries[k][k] = mq.clone();
                }
            } else {
                for k in 0..dim {
                    if k + 1 != i && k != i {
                        want.entries[k][k] = mq.clone();
                    }
                }
                want.entries[i - 1][i] = zeta.clone();
                want.entries[i][i - 1] = zeta_inv.clone();
                want.entries[i][i] = d.clone();
            }
            check(*rep.gen_matrix(i) == want, || format!("A{n}: π(T_{i}) = {:?}", rep.gen_matrix(i)))?;
        }
        // Degrees and recognised sets.
        let radius = 10;
        let report = empirical_search(&rep, radius, true);
        check(report.max_degree == Some(1), || format!("A{n}: max degree {:?}", report.max_degree))?;
        let mut gamma: BTreeSet<ExtAffineElt> = BTreeSet::new();
        for shell in c.aw.ball(radius) {
            for x in shell {
                if !x.is_identity() && bounds::unique_reduced_expression(&c.aw, &x) {
                    gamma.insert(x);
                }
            }
        }
        let with_sigma: BTreeSet<ExtAffineElt> =
            gamma.iter().flat_map(|x| c.aw.sigma_group().iter().map(move |s| x.mul(&s.as_element))).collect();
        let found: BTreeSet<ExtAffineElt> = report.arg_set.iter().map(|r| r.element.clone()).collect();
        check(found == with_sigma, || format!("A{n}: recognised {} vs Γ!Σ {}", found.len(), with_sigma.len()))?;
        // The σ-twisted elements really do attain degree 1.
        for r in &report.arg_set {
            let m = rep.matrix_of_word(&r.word);
            check(m.max_degree() == DegreeValue::Int(1), || format!("A{n}: {} has degree {}", r.word, m.max_degree()))?;
        }
        let no_sigma = empirical_search(&rep, radius, false);
        let found_w: BTreeSet<ExtAffineElt> = no_sigma.arg_set.iter().map(|r| r.element.clone()).collect();
        check(found_w == gamma, || format!("A{n}: recognised W-elements differ from Γ!"))?;
        // Leading matrices of recognised W-elements are independent in the
        // ℤ-module Mat_{n+1}(ℤ[ζ^{±1}]). There are more of them than (n+1)², so
        // the statement is about ℤ-coefficients, not ℤ[ζ^{±1}]-coefficients.
        let leads: Vec<RepMatrix> =
            gamma.iter().map(|x| bounds::leading_matrix(&rep, x, 1)).collect::<Result<_>>().map_err(|e| e.to_string())?;
        let rank = integer_rank(&leads);
        check(rank == leads.len(), || format!("A{n}: rank {rank} of {} leading matrices", leads.len()))?;
        notes.push(format!("A{n}: |Γ!|={} ℤ-rank {rank}", leads.len()));
    }
    Ok(notes.join("; "))
}

// 5 ---------------------------------------------------------------------------

/// Whether the sign pattern is bounded at `(a, b, c)`, read from the table of
/// bounded one-dimensional representations.
fn table_bounded(kind: &str, n: i64, signs: &[bool], a: i64, b: i64, c: i64) -> bool {
    match kind {
        "A" | "D" | "E" => signs.iter().all(|s| !s),
        "BC" => {
            let (s1, sn, s2n) = (signs[0], signs[1], signs[2]);
            match (s1, sn, s2n) {
                (false, false, _) => true,
                (true, false, false) => a + c >= 2 * (n - 1) * b,
                (true, false, true) => a - c >= 2 * (n - 1) * b,
                (false, true, false) => a - c <= (n - 1) * b,
                (false, true, true) => a + c <= (n - 1) * b,
                _ => false,
            }
        }
        _ => {
            // (short, long); a short, b long.
            let (sh, lo) = (signs[0], signs[1]);
            match (sh, lo) {
                (false, false) => true,
                (true, true) => false,
                (true, false) => match kind {
                    "B" => a <= (n - 1) * b,
                    "C" => (n - 1) * a <= b,
                    "F" => 5 * a <= 6 * b,
                    "G" => 2 * a <= 3 * b,
                    _ => unreachable!(),
                },
                (false, true) => match kind {
                    "B" => a >= 2 * (n - 1) * b,
                    "C" => (n - 1) * a >= 2 * b,
                    "F" => 3 * a >= 5 * b,
                    "G" => a >= 2 * b,
                    _ => unreachable!(),
                },
            }
        }
    }
}

fn classification() -> Outcome {
    let labels = ["A1", "A2", "A3", "A4", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2", "BC2", "BC3", "BC4"];
    let mut checked = 0usize;
    for l in labels {
        let kind: String = l.chars().take_while(|c| c.is_alphabetic()).collect();
        let n: usize = l[kind.len()..].parse().unwrap();
        let all: Vec<usize> = (1..=n).collect();
        let c = ctx(l, &all);
        let rs = c.rs();
        let maxnorm = (1..=n).map(|i| rs.norm(&unit(n, i - 1))).max().unwrap();
        let short = (1..=n).find(|&i| rs.norm(&unit(n, i - 1)) < maxnorm);
        let long = (1..=n).find(|&i| rs.norm(&unit(n, i - 1)) == maxnorm).unwrap();
        let rows = bounds::classify(l).map_err(|e| e.to_string())?;
        let base = WeightFunction::equal(&c.aw);
        let systems = JParamSystem::enumerate(&c, &base);
        check(rows.len() == systems.len(), || format!("{l}: {} rows", rows.len()))?;
        for (row, v0) in rows.iter().zip(&systems) {
            let signs_of = |v: &JParamSystem| -> Vec<bool> {
                if kind == "BC" {
                    let two_n: Vec<i64> = unit(n, n - 1).iter().map(|x| 2 * x).collect();
                    vec![v.v(&c, &unit(n, 0)).sign > 0, v.v_pair(&c, &unit(n, n - 1)).sign > 0, v.v(&c, &two_n).sign > 0]
                } else if let Some(s) = short {
                    vec![v.v(&c, &unit(n, s - 1)).sign > 0, v.v(&c, &unit(n, long - 1)).sign > 0]
                } else {
                    vec![v.v(&c, &unit(n, long - 1)).sign > 0]
                }
            };
            let signs = signs_of(v0);
            let keyed: BTreeMap<String, bool> = v0.dofs.iter().map(|d| (d.key.clone(), d.positive)).collect();
            for a in 1..=8 {
                for b in 1..=8 {
                    for cc in 1..=8 {
                        let Ok(w) = WeightFunction::new(&c.aw, a, b, cc) else { continue };
                        let v = JParamSystem::from_signs(&c, &w, &keyed).map_err(|e| e.to_string())?;
                        let want = table_bounded(&kind, n as i64, &signs, a, b, cc);
                        check(is_bounded(&c, &v) == want, || format!("{l} {} at ({a},{b},{cc})", v.label()))?;
                        check(row.holds([a, b, cc]) == want, || format!("{l} row {} at ({a},{b},{cc})", row.label))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (system, weight) pairs"))
}

// 6 ---------------------------------------------------------------------------

/// Signs by root length: `true` means `v = q^{L}` on that class.
fn by_length(c: &JContext, w: &WeightFunction, short_pos: bool, long_pos: bool) -> JParamSystem {
    let n = c.rank();
    let maxnorm = c.rs().positive_roots.iter().map(|r| c.rs().norm(r)).max().unwrap();
    let mut signs = BTreeMap::new();
    for d in alcove_hecke::jparam::dof_keys(c) {
        let node: usize = d.parse().unwrap();
        let long = c.rs().norm(&unit(n, node - 1)) == maxnorm;
        signs.insert(d, if long { long_pos } else { short_pos });
    }
    JParamSystem::from_signs(c, w, &signs).unwrap()
}

struct Family {
    j: &'static [usize],
    short_pos: bool,
    long_pos: bool,
    /// `(lo, hi, (x, y))`: on `lo ≤ a/b ≤ hi` the bound is `x a + y b`.
    pieces: &'static [((i64, i64), (i64, i64), (i64, i64))],
}

const INF: (i64, i64) = (1000, 1);

const F4_FAMILIES: &[Family] = &[
    Family { j: &[1, 2, 3], short_pos: true, long_pos: false, pieces: &[((0, 1), (2, 3), (2, 2)), ((2, 3), (1, 1), (5, 0)), ((1, 1), (6, 5), (6, -1)), ((6, 5), (2, 1), (11, -7))] },
    Family { j: &[1, 2, 3], short_pos: false, long_pos: true, pieces: &[((4, 1), INF, (4, 12))] },
    Family { j: &[2, 3, 4], short_pos: false, long_pos: true, pieces: &[((1, 1), (5, 3), (-2, 11)), ((5, 3), (3, 1), (1, 6)), ((3, 1), INF, (2, 3))] },
    Family { j: &[2, 3, 4], short_pos: true, long_pos: false, pieces: &[((0, 1), (1, 3), (6, 4)), ((1, 3), (1, 2), (9, 3))] },
    Family { j: &[2, 3], short_pos: false, long_pos: true, pieces: &[((2, 1), (4, 1), (4, 12)), ((4, 1), INF, (6, 4))] },
    Family { j: &[2, 3], short_pos: true, long_pos: false, pieces: &[((0, 1), (1, 2), (3, 6)), ((1, 2), (1, 1), (11, 2))] },
    Family { j: &[1, 2, 3, 4], short_pos: false, long_pos: true, pieces: &[((5, 3), (2, 1), (-2, 11)), ((2, 1), (3, 1), (-1, 9)), ((3, 1), INF, (0, 6))] },
    Family { j: &[1, 2, 3, 4], short_pos: true, long_pos: false, pieces: &[((0, 1), (1, 2), (3, 0)), ((1, 2), (1, 1), (5, -1)), ((1, 1), (6, 5), (11, -7))] },
];

fn in_piece(a: i64, b: i64, lo: (i64, i64), hi: (i64, i64)) -> bool {
    a * lo.1 >= lo.0 * b && a * hi.1 <= hi.0 * b
}

fn conjecture() -> Outcome {
    let mut notes = Vec::new();
    // G2 closed forms.
    let c = ctx("G2", &[1]);
    for a in 1..=8 {
        for b in 1..=8 {
            let w = WeightFunction::new(&c.aw, a, b, 1).unwrap();
            let v = JParamSystem::all_negative(&c, &w);
            let want = if a < 2 * b { 3 * b } else { a + b };
            let got = conjectural_bound(&c, &v).map_err(|e| e.to_string())?.value;
            check(got == want, || format!("G2 J={{1}} a={a} b={b}: {got} ≠ {want}"))?;
        }
    }
    let c = ctx("G2", &[1, 2]);
    for a in 1..=12 {
        for b in 1..=12 {
            if 2 * a > 3 * b {
                continue;
            }
            let w = WeightFunction::new(&c.aw, a, b, 1).unwrap();
            let v = by_length(&c, &w, true, false);
            let want = if a <= b { a } else { 3 * a - 2 * b };
            let got = conjectural_bound(&c, &v).map_err(|e| e.to_string())?.value;
            check(got == want, || format!("G2 J=I a={a} b={b}: {got} ≠ {want}"))?;
        }
    }
    // F4 families, every ratio a/b with a, b ≤ 12 inside a piece.
    let mut f4 = 0;
    for (k, fam) in F4_FAMILIES.iter().enumerate() {
        let c = ctx("F4", fam.j);
        for a in 1..=12 {
            for b in 1..=12 {
                let pieces: Vec<_> = fam.pieces.iter().filter(|p| in_piece(a, b, p.0, p.1)).collect();
                if pieces.is_empty() {
                    continue;
                }
                let w = WeightFunction::new(&c.aw, a, b, 1).unwrap();
                let v = by_length(&c, &w, fam.short_pos, fam.long_pos);
                let got = conjectural_bound(&c, &v).map_err(|e| format!("F4 family {} a={a} b={b}: {e}", k + 1))?.value;
                for p in pieces {
                    let want = p.2 .0 * a + p.2 .1 * b;
                    check(got == want, || format!("F4 family {} a={a} b={b}: {got} ≠ {want}", k + 1))?;
                }
                f4 += 1;
            }
        }
    }
    notes.push(format!("{f4} F4 points"));
    // Empirical searches.
    let mut searched = 0;
    let mut flagged = 0;
    for l in ["A2", "C2", "BC2", "G2"] {
        let aw = AffineWeyl::from_label(l).unwrap();
        let reps: Vec<WeightFunction> =
            [(1, 1, 1), (2, 1, 1), (1, 2, 1), (3, 2, 1), (2, 3, 1), (3, 1, 2), (5, 2, 1), (3, 1, 3)]
                .iter()
                .filter_map(|&(a, b, c)| WeightFunction::new(&aw, a, b, c).ok())
                .collect();
        for j in subsets(aw.rank()) {
            let c = ctx(l, &j);
            let dom = c.default_domain();
            for w in &reps {
                for v in JParamSystem::enumerate(&c, w) {
                    if !is_bounded(&c, &v) {
                        continue;
                    }
                    let conj = conjectural_bound(&c, &v).map_err(|e| format!("{l} J={j:?} {}: {e}", v.label()))?;
                    if conj.degenerate {
                        flagged += 1;
                    }
                    let rep = HeckeRep::new(&c, &v, &dom);
                    let r = empirical_search(&rep, 8, false);
                    check(r.max_degree == Some(conj.value) && r.stabilized, || {
                        format!("{l} J={j:?} abc={:?} {}: found {:?} (shells {:?}), conjectured {}", w.abc, v.label(), r.max_degree, r.shell_max, conj.value)
                    })?;
                    searched += 1;
                }
            }
        }
    }
    notes.push(format!("{searched} searches ({flagged} degenerate)"));
    // The one-dimensional G2 example: L(s_1) = a, L(s_0) = L(s_2) = b, v = (q^a, −q^{-b}).
    let c = ctx("G2", &[1, 2]);
    let dom = c.default_domain();
    let elt = |word: &[usize]| c.aw.word_to_elt(word, None);
    let p = elt(&[0, 2, 1, 2, 1]);
    let cases: [(i64, i64, i64, Vec<ExtAffineElt>, usize); 4] = [
        (1, 2, 1, vec![elt(&[1])], 8),
        (2, 2, 2, vec![elt(&[1]), elt(&[1, 2, 1]), elt(&[1, 2, 1, 2, 1])], 8),
        (5, 4, 7, vec![elt(&[1, 2, 1, 2, 1])], 8),
        (3, 2, 5, vec![elt(&[1, 2, 1, 2, 1]), elt(&[1, 2, 1, 2, 1]).mul(&p), elt(&[1, 2, 1, 2, 1]).mul(&p).mul(&p)], 15),
    ];
    for (item, (a, b, bound, gamma, radius)) in cases.into_iter().enumerate() {
        let w = WeightFunction::new(&c.aw, a, b, 1).unwrap();
        let v = by_length(&c, &w, true, false);
        let conj = conjectural_bound(&c, &v).map_err(|e| e.to_string())?.value;
        check(conj == bound, || format!("G2 item {}: conjectured {conj}", item + 1))?;
        let rep = HeckeRep::new(&c, &v, &dom);
        let r = empirical_search(&rep, radius, false);
        check(r.max_degree == Some(bound), || format!("G2 item {}: max {:?}", item + 1, r.max_degree))?;
        let got: BTreeSet<ExtAffineElt> = r.arg_set.iter().map(|x| x.element.clone()).collect();
        let want: BTreeSet<ExtAffineElt> = gamma.into_iter().collect();
        check(got == want, || {
            format!("G2 item {}: recognised {:?}", item + 1, r.arg_set.iter().map(|x| x.word.to_string()).collect::<Vec<_>>())
        })?;
    }
    notes.push("G2 example items 1-4".into());
    Ok(notes.join(", "))
}

// 7 ---------------------------------------------------------------------------

fn negative_systems() -> Outcome {
    let mut cases = 0;
    for &l in GRID_TYPES {
        let aw = AffineWeyl::from_label(l).unwrap();
        for j in subsets(aw.rank()) {
            let c = ctx(l, &j);
            let dom = c.default_domain();
            for w in weight_grid(&aw) {
                let v = JParamSystem::all_negative(&c, &w);
                let rep = HeckeRep::new(&c, &v, &dom);
                let r = empirical_search(&rep, 8, false);
                let top = l_w0(&c, &w);
                let got = r.max_degree.unwrap();
                check(got <= top, || format!("{l} J={j:?} abc={:?}: {got} > L(w0)={top}", w.abc))?;
                if j.is_empty() {
                    check(got == top, || format!("{l} J=∅ abc={:?}: {got} ≠ L(w0)={top}", w.abc))?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

// 8 ---------------------------------------------------------------------------

fn det(mut m: Vec<Vec<i64>>) -> i64 {
    // Bareiss elimination.
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for jj in k + 1..n {
                m[i][jj] = (m[i][jj] * m[k][k] - m[i][k] * m[k][jj]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn properties() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut paths_checked = 0usize;
    for &l in GRID_TYPES {
        let aw = AffineWeyl::from_label(l).unwrap();
        for j in subsets(aw.rank()) {
            let c = ctx(l, &j);
            let w = WeightFunction::new(&c.aw, 3, 2, 1).unwrap();
            let systems = JParamSystem::enumerate(&c, &w);
            let dom = c.default_domain();
            let ball: Vec<ExtAffineElt> = c.aw.ball(5).into_iter().flatten().collect();
            let mut all_paths = Vec::new();
            for x in &ball {
                let (letters, s) = c.aw.reduced_word(x);
                for start in &dom.members {
                    for p in enumerate(&c, &Word::with_sigma(letters.clone(), s), start, None).map_err(|e| e.to_string())? {
                        let st = p.straighten(&c);
                        check(st.path.steps.iter().all(|s| !s.kind.is_bounce()), || "bounce after straightening".into())?;
                        check(unstraighten(&c, &st.path).map_err(|e| e.to_string())? == p, || format!("{l} round trip {}", p.pattern()))?;
                        for v in &systems {
                            check(p.mass(&c, v) == &st.fold_factor(&c, v) * &st.wall_factor(&c, v), || {
                                format!("{l} J={j:?} mass factorisation {}", p.pattern())
                            })?;
                        }
                        paths_checked += 1;
                        all_paths.push(p);
                    }
                }
            }
            // Translation action on paths: masses preserved, weight law.
            let pts = c.aj_points(2);
            for _ in 0..200 {
                let p = &all_paths[rng.gen_range(0..all_paths.len())];
                let lam = &pts[rng.gen_range(0..pts.len())];
                let tp = p.tj_act(&c, lam).map_err(|e| e.to_string())?;
                for v in &systems {
                    check(p.mass(&c, v) == tp.mass(&c, v), || format!("{l} J={j:?} mass under translation"))?;
                }
                let (wt, th) = p.wt_theta(&c, &dom).map_err(|e| e.to_string())?;
                let (wt2, th2) = tp.wt_theta(&c, &dom).map_err(|e| e.to_string())?;
                let sum: Vec<i64> = lam.iter().zip(&wt).map(|(a, b)| a + b).collect();
                check(th == th2 && wt2 == c.project_aj(&sum).map_err(|e| e.to_string())?, || format!("{l} J={j:?} weight law"))?;
            }
            // Parameter system lemmas.
            let wj = c.parabolic_elements(&c.j);
            let rs = c.rs();
            for v in &systems {
                for &x in &c.j {
                    let a = unit(c.rank(), x - 1);
                    if !rs.double_is_root(&a) {
                        let cv = rs.coroot(&a).unwrap();
                        check(v.v_power(&c, &cv) == v.v(&c, &a) * v.v(&c, &a), || format!("{l} v^α∨ = v_α²"))?;
                    }
                }
                for _ in 0..200 {
                    let y = &wj[rng.gen_range(0..wj.len())];
                    let lam = &pts[rng.gen_range(0..pts.len())];
                    let (yl, _) = c.y_t_of(lam).map_err(|e| e.to_string())?;
                    let lhs = v.v_of_elt(&c, &y.mul(&yl)).map_err(|e| e.to_string())?;
                    let rhs = v.v_power(&c, &y.act_coweight(lam)) * v.v_of_elt(&c, y).map_err(|e| e.to_string())?;
                    check(lhs == rhs, || format!("{l} J={j:?} v(y y_λ)"))?;
                    for (ki, (_, phi)) in c.components.iter().enumerate() {
                        let sp = FiniteWeylElt::reflection(rs, phi);
                        let ratio = v.v_of_elt(&c, y).unwrap() * v.v_of_elt(&c, &y.mul(&sp)).unwrap().inv();
                        let got = ratio * v.v_power(&c, &y.act_coweight(&rs.coroot(phi).unwrap()));
                        let vk = v.psi_t0(&c, ki);
                        let want = if RootSystem::is_positive(&y.act_root(phi)) { vk } else { vk.inv() };
                        check(got == want, || format!("{l} J={j:?} ψ(T_0) lemma"))?;
                    }
                }
            }
        }
    }
    // |T_J| = |P/Q| for J = I: the determinant of the Cartan matrix, halved in
    // type BC where (2α)^∨ = α^∨/2 refines the coroot lattice.
    let mut orders = 0;
    for (kind, ranks) in [("A", 1..=8), ("B", 2..=8), ("C", 2..=8), ("D", 4..=8), ("E", 6..=8), ("F", 4..=4), ("G", 2..=2), ("BC", 1..=8)] {
        for n in ranks {
            let l = format!("{kind}{n}");
            let all: Vec<usize> = (1..=n).collect();
            let c = ctx(&l, &all);
            let d = det(c.rs().cartan.clone()).abs();
            let want = if kind == "BC" { d / 2 } else { d } as usize;
            let got = c.aj_points(1).len();
            check(got == want, || format!("{l}: |T_J| = {got}, expected {want}"))?;
            orders += 1;
        }
    }
    let q = |k: i64| QLaurent::q_pow(0, k);
    let one = QLaurent::one(0);
    let num = [&q(2) + &one, &q(3) + &one];
    let den = [&(&q(7) - &q(1)) + &one];
    let dg = rational_degree(&num, &den);
    check(dg == Some(-2), || format!("rational degree {dg:?}"))?;
    Ok(format!("{paths_checked} paths, {orders} translation groups"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("cancellation example", cancellation),
        ("path formula equals product formula", paths_equal_products),
        ("algebra relations", relations),
        ("type A cell of unique reduced words", type_a_cell),
        ("boundedness classification", classification),
        ("conjectural bound", conjecture),
        ("negative system bound", negative_systems),
        ("property suites", properties),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != k + 1) {
            continue;
        }
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {} {name} ({secs:.1}s): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {msg}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
