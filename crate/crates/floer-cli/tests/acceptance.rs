//! Acceptance run: one PASS/FAIL line per criterion. Expected values and the
//! algebraic checks (d∘d, component counts, index path independence) are
//! computed here from first principles rather than through the library's
//! own verifiers.

use floer_cli::parallel::build_braid;
use floer_cli::reproduce::{bp_names, find_generator, handleslide_fixture, lattice_suite, random_braid, BpNames};
use floer_core::arc_engine::{build_cell_complex, build_model_2x2, Decoration, Mode, VertexKind};
use floer_core::braid_core::{bp_braid, BraidWord};
use floer_core::domain_counter::{Domain, DomainContext};
use floer_core::floer_complex::{domain_weights, enumerate_generators, period_lattice, Generator};
use floer_core::invariants::{psi_sharp, stabilize_and_compare, BuildOptions, FloerComplex, PsiSharp};
use floer_core::Quarters;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

const SEED: u64 = 7;

type Poly = BTreeSet<(i64, Vec<i64>)>;

fn poly_of(fc: &FloerComplex, i: usize, j: usize) -> Option<Poly> {
    let e = fc.differential.get(i, j)?;
    Some(e.value.terms.iter().map(|m| (m.hbar, m.class.clone())).collect())
}

fn toggle(p: &mut Poly, m: (i64, Vec<i64>)) {
    if !p.remove(&m) {
        p.insert(m);
    }
}

/// Pairs `(i, k)` where `d∘d` is provably nonzero over GF(2): every path is
/// determinate and the products do not cancel.
fn d_squared_violations(fc: &FloerComplex) -> usize {
    let m = &fc.differential;
    let mut bad = 0;
    for i in 0..m.rows.len() {
        let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
        let mut blocked = BTreeSet::new();
        for (&j, e1) in &m.rows[i] {
            for (&k, e2) in &m.rows[j] {
                if !e1.determinate || !e2.determinate {
                    blocked.insert(k);
                    continue;
                }
                let (a, b) = (poly_of(fc, i, j).unwrap(), poly_of(fc, j, k).unwrap());
                let slot = acc.entry(k).or_default();
                for x in &a {
                    for y in &b {
                        let class = x.1.iter().zip(&y.1).map(|(p, q)| p + q).collect();
                        toggle(slot, (x.0 + y.0, class));
                    }
                }
            }
        }
        bad += acc.iter().filter(|(k, p)| !p.is_empty() && !blocked.contains(*k)).count();
    }
    bad
}

/// Components of the closure from the letters alone.
fn components(b: &BraidWord) -> usize {
    let mut perm: Vec<usize> = (0..b.strands).collect();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; b.strands];
    let mut cycles = 0;
    for s in 0..b.strands {
        if !seen[s] {
            cycles += 1;
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = perm[t];
            }
        }
    }
    cycles
}

fn index_of(fc: &FloerComplex, a: usize, b: usize) -> Option<Quarters> {
    let (ga, gb) = (&fc.generators[a], &fc.generators[b]);
    let w = domain_weights(&fc.cx, ga, gb)?;
    DomainContext::new(&fc.cx).index(&Domain { from: ga.clone(), to: gb.clone(), weights: w }).ok()
}

fn nonneg_index(cx: &floer_core::CellComplex, a: &Generator, b: &Generator) -> Option<Quarters> {
    let w = domain_weights(cx, a, b)?;
    if w.iter().any(|&x| x < 0) {
        return None;
    }
    DomainContext::new(cx).index(&Domain { from: a.clone(), to: b.clone(), weights: w }).ok()
}

fn is_h1(fc: &FloerComplex, i: usize, j: usize) -> bool {
    fc.differential.get(i, j).is_some_and(|e| e.determinate && e.value.terms.len() == 1 && e.value.terms.iter().all(|m| m.hbar == 1))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, title: &str, o: &Outcome, secs: f64) -> bool {
    println!("{} criterion {} ({}): {} [{:.2}s]", if o.pass { "PASS" } else { "FAIL" }, n, title, o.detail, secs);
    o.pass
}

// -- 1, 2 -------------------------------------------------------------------

fn bp_complex(l: usize) -> FloerComplex {
    build_braid(Mode::HalfArc, &bp_braid(l), BuildOptions::default()).expect("BP complex builds")
}

fn criterion_bp_vanishing(neg: &mut NegativeHbar) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for l in 3..=5 {
        let t = Instant::now();
        let fc = bp_complex(l);
        neg.scan(&fc);
        let psi = psi_sharp(&fc).expect("contact generator exists");
        let secs = t.elapsed().as_secs_f64();
        let (good, what) = match &psi {
            PsiSharp::Vanishing(c) => (c.verify(&fc) && secs < 60.0, format!("Vanishing ({} terms)", c.terms.len())),
            PsiSharp::NoPrimitiveAtBounds { .. } => (false, "NoPrimitiveAtBounds".to_string()),
            PsiSharp::Inconclusive { reason } => (false, format!("Inconclusive: {}", reason)),
        };
        if l == 3 {
            // the primitive {y1^,y2^,x3} + {y1v,z2*,x3} must hit exactly h * x
            let n = bp_names(&fc).expect("named generators");
            let mut sum: BTreeMap<usize, Poly> = BTreeMap::new();
            let mut undetermined = 0;
            for g in [n.y_hat, n.y_check_z] {
                for (&j, e) in &fc.differential.rows[g] {
                    if !e.determinate {
                        undetermined += 1;
                    }
                    let s = sum.entry(j).or_default();
                    for m in &e.value.terms {
                        toggle(s, (m.hbar, m.class.clone()));
                    }
                }
            }
            sum.retain(|_, p| !p.is_empty());
            let exact = undetermined == 0 && sum.len() == 1 && is_h1(&fc, n.y_hat, n.contact);
            ok &= exact;
            parts.push(format!("l=3 d(primitive) = h x: {} ({} undetermined entries)", exact, undetermined));
        }
        ok &= good;
        parts.push(format!("l={} {} in {:.2}s", l, what, secs));
    }
    Outcome { pass: ok, detail: parts.join("; ") }
}

fn criterion_bp_identities(neg: &mut NegativeHbar) -> Outcome {
    let fc = bp_complex(3);
    neg.scan(&fc);
    let Some(n) = bp_names(&fc) else {
        return Outcome { pass: false, detail: "named generators not found".into() };
    };
    let BpNames { contact, y_hat, y_check_z, r2_check, t2_check, .. } = n;
    let row_exact = |g: usize, want: &[usize]| {
        let row = &fc.differential.rows[g];
        row.len() == want.len() && want.iter().all(|&j| is_h1(&fc, g, j))
    };
    let show = |g: usize| {
        fc.differential.rows[g]
            .iter()
            .map(|(&j, e)| {
                let tag = match (j, e.determinate) {
                    (j, _) if j == contact => "x",
                    (j, _) if j == r2_check => "{r2v,x2,x3}",
                    (j, _) if j == t2_check => "{t2v,x1,x3}",
                    _ => "other",
                };
                if e.determinate {
                    format!("{}={}", tag, e.value)
                } else {
                    format!("{}=?{}", tag, e.reason.map_or("", |r| r.code()))
                }
            })
            .collect::<Vec<_>>()
            .join(", ")
    };
    let a = row_exact(y_hat, &[contact, r2_check, t2_check]);
    let b = row_exact(y_check_z, &[r2_check, t2_check]);
    Outcome {
        pass: a && b,
        detail: format!("d{{y1^,y2^,x3}} = [{}] exact {}; d{{y1v,z2*,x3}} = [{}] exact {}", show(y_hat), a, show(y_check_z), b),
    }
}

// -- 3 ----------------------------------------------------------------------

fn criterion_index() -> Outcome {
    let mut rows: Vec<(&str, i64, Option<Quarters>)> = Vec::new();
    let cx = build_cell_complex(&handleslide_fixture()).expect("fixture compiles");
    let gens = enumerate_generators(&cx);
    let pick = |labels: [usize; 2]| {
        gens.iter()
            .find(|g| g.points.iter().zip(labels).all(|(p, l)| cx.marked_label(p.vertex) == Some(l)))
            .expect("critical generator")
    };
    // reflected fixture: Theta on the top row (3, 4), Xi on the bottom row (1, 2)
    let theta = pick([3, 4]);
    rows.push(("Theta->Xi", 4, nonneg_index(&cx, theta, pick([1, 2]))));
    rows.push(("Theta->{Theta1,Xi2}", 2, nonneg_index(&cx, theta, pick([3, 2]))));
    rows.push(("Theta->{Theta2,Xi1}", 2, nonneg_index(&cx, theta, pick([1, 4]))));
    let fc = bp_complex(3);
    let n = bp_names(&fc).expect("named generators");
    let g = |i: usize| &fc.generators[i];
    let y = g(n.y_hat);
    rows.push(("D1 hat", 0, nonneg_index(&fc.cx, y, g(n.r1.0))));
    rows.push(("D1 check", -1, nonneg_index(&fc.cx, y, g(n.r1.1))));
    rows.push(("D2", 1, nonneg_index(&fc.cx, y, g(n.contact))));
    rows.push(("D3", 1, nonneg_index(&fc.cx, y, g(n.r2_check))));
    rows.push(("D4", 1, nonneg_index(&fc.cx, y, g(n.t2_check))));
    let model = build_model_2x2();
    let mg = enumerate_generators(&model);
    rows.push(("trivial strip", 0, nonneg_index(&model, &mg[0], &mg[0])));
    let pass = rows.iter().all(|(_, want, got)| *got == Some(Quarters::from_int(*want)));
    let detail = rows
        .iter()
        .map(|(name, want, got)| format!("{}={} (want {})", name, got.map_or("none".into(), |q| q.to_string()), want))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome { pass, detail }
}

// -- 4 ----------------------------------------------------------------------

fn criterion_lattice() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for b in lattice_suite() {
        let r = components(&b);
        for mode in [Mode::Capped, Mode::HalfArc] {
            let d = floer_core::arc_engine::braid_diagram(mode, &b).expect("diagram");
            let rank = period_lattice(&build_cell_complex(&d).expect("cells")).rank();
            ok &= rank + 1 == r;
            parts.push(format!("{:?} {}{:?}:{}/{}", mode, b.strands, b.letters, rank, r - 1));
        }
    }
    Outcome { pass: ok, detail: parts.join(" ") }
}

// -- 5 ----------------------------------------------------------------------

fn criterion_model(neg: &mut NegativeHbar) -> Outcome {
    use Decoration::*;
    let fc = FloerComplex::build(build_model_2x2(), BuildOptions::default()).expect("model builds");
    neg.scan(&fc);
    // the grid has one crossing per arc pair
    let at = |i: usize, j: usize| {
        fc.cx.fixed_seq[i - 1]
            .iter()
            .copied()
            .find(|&v| matches!(fc.cx.vertices[v].kind, VertexKind::Crossing { moving, .. } if moving == j))
            .expect("grid crossing")
    };
    let from = find_generator(&fc, &[(at(1, 2), Check), (at(2, 1), Check)]).expect("x12v x21v");
    let to = find_generator(&fc, &[(at(1, 1), Hat), (at(2, 2), Check)]).expect("x11^ x22v");
    let n = fc.generators.len();
    let d2 = d_squared_violations(&fc);
    let undetermined = fc.differential.indeterminate_count();
    let arrow = is_h1(&fc, from, to);
    let all_h1 = fc
        .differential
        .entries()
        .filter(|e| e.2.determinate)
        .all(|(_, _, e)| e.value.terms.iter().all(|m| m.hbar == 1));
    Outcome {
        pass: n == 8 && d2 == 0 && undetermined == 0 && arrow && all_h1,
        detail: format!(
            "{} generators, d∘d violations {}, undetermined {}, arrow h^1 {}, all arrows h^1 {}",
            n, d2, undetermined, arrow, all_h1
        ),
    }
}

// -- 6 ----------------------------------------------------------------------

#[derive(Default)]
struct ModeTally {
    complexes: usize,
    fully_determinate: usize,
    d2_violations: usize,
    d2_on_determinate: usize,
    grading: usize,
    index: usize,
    contact_nonzero: usize,
    contact_undetermined: usize,
}

fn criterion_properties(neg: &mut NegativeHbar) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let braids: Vec<BraidWord> = (0..200).map(|_| random_braid(&mut rng, 3, 6)).collect();
    let mut tallies = Vec::new();
    for mode in [Mode::HalfArc, Mode::Capped] {
        let mut t = ModeTally::default();
        for b in &braids {
            let fc = build_braid(mode, b, BuildOptions::default()).expect("random complex builds");
            neg.scan(&fc);
            t.complexes += 1;
            let full = fc.differential.is_fully_determinate();
            let v = d_squared_violations(&fc);
            if full {
                t.fully_determinate += 1;
                t.d2_on_determinate += usize::from(v > 0);
            }
            t.d2_violations += usize::from(v > 0);
            let gr = &fc.grading;
            let raise_ok = fc.differential.entries().all(|(i, j, _)| {
                gr.component[i] == gr.component[j] && gr.value[j] - gr.value[i] == Quarters::from_int(1)
            });
            t.grading += usize::from(!raise_ok);
            let n = fc.generators.len();
            let mut index_ok = true;
            'pairs: for a in 0..n {
                for b in 0..n {
                    let comparable = fc.class_of[a] == fc.class_of[b] && gr.component[a] == gr.component[b];
                    if comparable && index_of(&fc, a, b) != Some(gr.value[b] - gr.value[a]) {
                        index_ok = false;
                        break 'pairs;
                    }
                }
            }
            t.index += usize::from(!index_ok);
            match fc.contact {
                None => t.contact_nonzero += 1,
                Some(x) => {
                    let row = &fc.differential.rows[x];
                    if row.values().any(|e| e.determinate) {
                        t.contact_nonzero += 1;
                    } else if !row.is_empty() {
                        t.contact_undetermined += 1;
                    }
                }
            }
        }
        tallies.push((mode, t));
    }
    let pass = tallies.iter().all(|(_, t)| {
        t.d2_violations == 0 && t.grading == 0 && t.index == 0 && t.contact_nonzero == 0 && t.contact_undetermined == 0
    });
    let detail = tallies
        .iter()
        .map(|(m, t)| {
            format!(
                "{:?}: {} complexes ({} fully determinate), d∘d violations {} ({} on fully determinate), grading {}, index {}, d(contact) nonzero {} undetermined {}",
                m, t.complexes, t.fully_determinate, t.d2_violations, t.d2_on_determinate, t.grading, t.index, t.contact_nonzero, t.contact_undetermined
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { pass, detail }
}

// -- 7 ----------------------------------------------------------------------

fn criterion_stabilization(neg: &mut NegativeHbar) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut exact, mut bijective, mut contact, mut violations, mut partial) = (0, 0, 0, 0, 0);
    let mut skipped = 0;
    for _ in 0..20 {
        let len = rng.random_range(0..=6);
        let letters = (0..len).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
        let b = BraidWord::new(2, letters).expect("B2 word");
        match stabilize_and_compare(&b, 1, BuildOptions::default()) {
            Ok((small, big, m)) => {
                neg.scan(&small);
                neg.scan(&big);
                bijective += 1;
                contact += usize::from(m.contact_preserved);
                if m.skipped_pairs == 0 && m.contact_preserved {
                    exact += 1;
                } else {
                    partial += 1;
                    skipped += m.skipped_pairs;
                }
            }
            Err(_) => violations += 1,
        }
    }
    Outcome {
        pass: exact == 20,
        detail: format!(
            "bijective {}/20, contact preserved {}/20, chain map verified on every pair {}/20, violations {}, braids with undetermined pairs {} ({} pairs skipped)",
            bijective, contact, exact, violations, partial, skipped
        ),
    }
}

// -- 8 ----------------------------------------------------------------------

#[derive(Default)]
struct NegativeHbar {
    complexes: usize,
    monomials: usize,
    negative: usize,
}

impl NegativeHbar {
    fn scan(&mut self, fc: &FloerComplex) {
        self.complexes += 1;
        for (_, _, e) in fc.differential.entries() {
            if e.determinate {
                for m in &e.value.terms {
                    self.monomials += 1;
                    self.negative += usize::from(m.hbar < 0);
                }
            }
        }
    }
}

fn timed(n: usize, title: &str, results: &mut Vec<bool>, f: impl FnOnce() -> Outcome) {
    let t = Instant::now();
    let o = f();
    results.push(report(n, title, &o, t.elapsed().as_secs_f64()));
}

fn main() {
    let mut neg = NegativeHbar::default();
    let mut results = Vec::new();
    let r = &mut results;
    timed(1, "BP contact class vanishes for l = 3, 4, 5, each < 60 s", r, || criterion_bp_vanishing(&mut neg));
    timed(2, "BP named differential identities, exact", r, || criterion_bp_identities(&mut neg));
    timed(3, "index calibration values, exact", r, criterion_index);
    let t = Instant::now();
    let mut lat = criterion_lattice();
    let secs = t.elapsed().as_secs_f64();
    lat.pass &= secs < 5.0;
    results.push(report(4, "lattice rank = components - 1, < 5 s", &lat, secs));
    let r = &mut results;
    timed(5, "model grid complex", r, || criterion_model(&mut neg));
    timed(6, "property suite on 200 random braids, < 10 min", r, || {
        let t = Instant::now();
        let mut o = criterion_properties(&mut neg);
        o.pass &= t.elapsed().as_secs() < 600;
        o
    });
    timed(7, "positive stabilization on 20 random two-strand braids", r, || criterion_stabilization(&mut neg));
    let o = Outcome {
        pass: neg.negative == 0,
        detail: format!("{} negative exponents among {} determinate monomials in {} complexes", neg.negative, neg.monomials, neg.complexes),
    };
    results.push(report(8, "hbar exponents nonnegative across all suites", &o, 0.0));
    let passed = results.iter().filter(|&&p| p).count();
    println!("{}/{} criteria pass", passed, results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
