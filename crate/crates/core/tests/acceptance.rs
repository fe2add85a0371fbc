//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::Instant;

use sqfree::factorize::{factor, uniqueness_check, verify, Outcome, Scheme};
use sqfree::lab::catalog::{parse_catalog, radical_gap, run_catalog, CATALOG};
use sqfree::lab::classify::{table_consistency, ClassificationRow};
use sqfree::lab::count::{count_squarefree, verify_count_witness, witness_for_count};
use sqfree::predicates::laws::{element_diagram, radical_divisors};
use sqfree::predicates::profile::monoid_profile;
use sqfree::predicates::{
    is_atom, is_prime, is_radical, is_squarefree, radical_set, squarefree_set,
};
use sqfree::submonoid::{
    atom_transfer_report, check_transfer, closure_checks, squarefree_transfer_report,
    SubmonoidContext, Transfer, ELEMENT_BOUND,
};
use sqfree::{Element, Monoid, Norm};

/// A monoid exercised by some criterion, with the bound used for the
/// diagram checks.
struct Instance {
    monoid: Monoid,
    bound: Norm,
}

#[derive(Default)]
struct Suite {
    lines: Vec<(usize, bool, String)>,
    instances: Vec<Instance>,
}

impl Suite {
    fn record(&mut self, id: usize, name: &str, started: Instant, problems: Vec<String>) {
        let ok = problems.is_empty();
        let detail = if ok {
            String::new()
        } else {
            format!(": {}", problems.join("; "))
        };
        let line = format!(
            "{} criterion {id} {name} ({:.1}s){detail}",
            if ok { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64()
        );
        println!("{line}");
        self.lines.push((id, ok, line));
    }

    fn exercise(&mut self, monoid: Monoid, bound: Norm) {
        self.instances.push(Instance { monoid, bound });
    }
}

fn v(x: &[u64]) -> Element {
    Element::vector(x.to_vec())
}

fn counting(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=40u64 {
        let spec = match witness_for_count(n) {
            Ok(spec) => spec,
            Err(e) => {
                bad.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let m = Monoid::new(spec).expect("witness spec builds");
        let bound = 2 * n + 4;
        match count_squarefree(&m, bound) {
            Ok(c) if c.count == Some(n as usize) => {}
            Ok(c) => bad.push(format!("n={n}: {}", c.render())),
            Err(e) => bad.push(format!("n={n}: {e}")),
        }
        if m.is_enumerable() {
            s.exercise(m, bound.min(12));
        }
    }
    match verify_count_witness(4, 16) {
        Ok((_, c, atoms)) => {
            let want: Vec<Element> = [0, 2, 5, 7].map(Element::Natural).to_vec();
            if c.set != want {
                bad.push(format!("m=2 set {:?}", c.set));
            }
            if atoms != vec![Element::Natural(2), Element::Natural(5)] {
                bad.push(format!("m=2 atoms {atoms:?}"));
            }
        }
        Err(e) => bad.push(format!("m=2: {e}")),
    }
    s.record(1, "square-free counts n=1..40", t, bad);
}

fn separating_example(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let gens = vec![vec![1, 1, 0], vec![1, 0, 1]];
    let ctx = SubmonoidContext::new(3, gens.clone(), ELEMENT_BOUND).expect("context");
    let mut atoms = ctx.atoms();
    atoms.sort();
    if atoms != vec![vec![1, 0, 1], vec![1, 1, 0]] {
        bad.push(format!("atoms {atoms:?}"));
    }
    let t11 = check_transfer(&ctx, Transfer::AtomsSquarefree);
    if !t11.holds() {
        bad.push(format!("1.1: {}", t11.summary()));
    }
    let t14 = check_transfer(&ctx, Transfer::SquareRoots);
    if !(t14.fails() && t14.witness == vec![v(&[1, 0, 0]), v(&[0, 1, 1])]) {
        bad.push(format!("1.4: {}", t14.summary()));
    }
    let first = atom_transfer_report(&ctx);
    if first.verdicts[0].1.witness != t14.witness || !first.verdicts[0].1.fails() {
        bad.push(format!("condition (i): {}", first.verdicts[0].1.summary()));
    }
    let wide = SubmonoidContext::with_bounds(3, gens, 8, 24).expect("context");
    let q = closure_checks(&wide).quotient_closed;
    if q.fails() {
        bad.push(format!("quotient closure: {}", q.summary()));
    }
    s.exercise(Monoid::submonoid(3, &[&[1, 1, 0], &[1, 0, 1]]).unwrap(), 6);
    s.record(2, "separating submonoid of N^3", t, bad);
}

fn condition_grid() -> Vec<(usize, Vec<Vec<u64>>)> {
    let plane = [[1, 0], [0, 1], [1, 1], [2, 0], [2, 1], [1, 3], [3, 2]];
    let mut out = Vec::new();
    for i in 0..plane.len() {
        for j in i + 1..plane.len() {
            out.push((2, vec![plane[i].to_vec(), plane[j].to_vec()]));
        }
    }
    let space: [&[[u64; 3]]; 8] = [
        &[[1, 1, 0], [1, 0, 1]],
        &[[1, 1, 1]],
        &[[1, 0, 0], [0, 1, 1]],
        &[[2, 0, 0], [0, 1, 0], [0, 0, 1]],
        &[[1, 1, 0], [0, 1, 1], [1, 0, 1]],
        &[[3, 0, 0], [0, 2, 1]],
        &[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        &[[1, 2, 0], [0, 1, 3], [2, 0, 1]],
    ];
    for gens in space {
        out.push((3, gens.iter().map(|g| g.to_vec()).collect()));
    }
    out
}

fn condition_suites(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let grid = condition_grid();
    assert!(grid.len() >= 20);
    for (rank, gens) in &grid {
        let ctx = SubmonoidContext::with_bounds(*rank, gens.clone(), 6, 18).expect("context");
        let a = atom_transfer_report(&ctx);
        let b = squarefree_transfer_report(&ctx);
        if !a.passed() {
            bad.push(format!("{gens:?}: atom conditions split {}/5", a.refuted()));
        }
        if !b.passed() {
            bad.push(format!(
                "{gens:?}: square-free conditions split {}/8",
                b.refuted()
            ));
        }
        let refs: Vec<&[u64]> = gens.iter().map(|g| g.as_slice()).collect();
        s.exercise(Monoid::submonoid(*rank, &refs).unwrap(), 4);
    }
    s.record(
        3,
        &format!("condition suites on {} contexts", grid.len()),
        t,
        bad,
    );
}

fn cube(side: u64) -> Vec<Element> {
    let mut out = Vec::new();
    for x in 0..=side {
        for y in 0..=side {
            for z in 0..=side {
                out.push(v(&[x, y, z]));
            }
        }
    }
    out
}

fn round_trips(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let free = Monoid::free(3);
    // Same monoid presented by generators: factored by the generic search.
    let generic = Monoid::submonoid(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
    let elements = cube(5);
    assert_eq!(elements.len(), 216);
    for a in &elements {
        for scheme in [Scheme::Ii, Scheme::Iii, Scheme::Iv, Scheme::V, Scheme::Vi] {
            match factor(&free, a, scheme) {
                Ok(Outcome::Found(f)) => {
                    let ok = verify(&free, a, &f).map(|r| r.holds()).unwrap_or(false);
                    if !ok {
                        bad.push(format!("{a} ({scheme}) fails verify"));
                    }
                }
                other => bad.push(format!("{a} ({scheme}): {other:?}")),
            }
        }
        let closed = factor(&free, a, Scheme::Iv);
        let dfs = factor(&generic, a, Scheme::Iv);
        match (closed, dfs) {
            (Ok(Outcome::Found(x)), Ok(Outcome::Found(y))) => {
                if !verify(&generic, a, &y).map(|r| r.holds()).unwrap_or(false) {
                    bad.push(format!("{a}: search result fails verify"));
                }
                let cx = x.compressed(&free);
                let cy = y.compressed(&generic);
                let same = cx.len() == cy.len()
                    && cx.iter().zip(&cy).all(|((e1, p1), (e2, p2))| {
                        e1 == e2 && free.are_associates(p1, p2).unwrap_or(false)
                    });
                if !same {
                    bad.push(format!(
                        "{a}: closed {} vs search {}",
                        x.render(&free),
                        y.render(&generic)
                    ));
                }
            }
            other => bad.push(format!("{a} (iv) comparison: {other:?}")),
        }
    }
    s.exercise(free, 4);
    s.exercise(generic, 4);
    s.record(4, "scheme round trips on 216 elements of N^3", t, bad);
}

fn uniqueness(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let m = Monoid::free(2);
    for x in 0..=4 {
        for y in 0..=4 {
            let a = v(&[x, y]);
            for scheme in [Scheme::Iii, Scheme::Iv, Scheme::Vi, Scheme::V] {
                match uniqueness_check(&m, &a, scheme, 8) {
                    Ok(r) if r.holds() => {}
                    Ok(r) => bad.push(format!("{a} ({scheme}): {}", r.summary())),
                    Err(e) => bad.push(format!("{a} ({scheme}): {e}")),
                }
            }
        }
    }
    s.exercise(m, 6);
    s.record(5, "unique factorisations on N^2 up to 4", t, bad);
}

fn radical_theory(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=3 {
        let m = Monoid::free(n);
        let r = radical_set(&m, 6).unwrap();
        let q = squarefree_set(&m, 6).unwrap();
        if !r.undecided.is_empty() || !q.undecided.is_empty() || r.members != q.members {
            bad.push(format!(
                "N^{n}: radical {} vs square-free {}",
                r.members.len(),
                q.members.len()
            ));
        }
        let d = radical_divisors(&m, 6).unwrap();
        if !d.passed() {
            bad.push(format!("N^{n}: {:?}", d.violations));
        }
    }
    let m = Monoid::shifted(2, &[0]).unwrap();
    let gap = radical_gap(&m, 12).unwrap();
    match (gap.witness.as_slice(), gap.exponent) {
        ([a, b], Some(k)) => {
            let sf = is_squarefree(&m, a).unwrap().holds();
            let not_div = !m.is_divisor(a, b).unwrap();
            let power = m.pow(b, k).unwrap();
            let div_pow = m.is_divisor(a, &power).unwrap();
            if !(sf && not_div && div_pow) {
                bad.push(format!("witness {a}, {b}, n={k} does not re-verify"));
            }
        }
        _ => bad.push(format!(
            "no square-free non-radical element: {}",
            gap.summary()
        )),
    }
    let d = radical_divisors(&m, 12).unwrap();
    if !d.passed() || d.checked == 0 {
        bad.push(format!("divisors of radical elements: {:?}", d.violations));
    }
    s.exercise(m, 12);
    s.record(6, "radical and square-free elements", t, bad);
}

fn catalog(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let report = run_catalog();
    if !report.passed() {
        bad.extend(report.failures.iter().cloned());
    }
    let entries = parse_catalog(CATALOG).unwrap();
    for id in [
        "bpq11.schemes",
        "bpq11.atomic",
        "bpq12.y1",
        "rationals.schemes",
        "rationals.gcd",
        "nge2.atoms",
        "nge2.prime2",
        "poly.squarefree",
        "poly.lengths",
    ] {
        if !entries.iter().any(|e| e.id == id) {
            bad.push(format!("catalog entry {id} missing"));
        }
    }
    s.exercise(Monoid::bpq(1, 1, 8).unwrap(), 3);
    s.exercise(Monoid::bpq(1, 2, 8).unwrap(), 3);
    s.exercise(Monoid::bpq(1, 3, 6).unwrap(), 3);
    s.exercise(Monoid::bpq(2, 1, 6).unwrap(), 3);
    s.exercise(Monoid::rationals(), 4);
    s.exercise(Monoid::gf2_gf4(4), 2);
    s.record(7, &format!("catalog ({} entries)", entries.len()), t, bad);
}

/// The element diagram on explicit elements of a monoid without a ball.
fn sampled_diagram(m: &Monoid, sample: &[&str]) -> Vec<String> {
    let mut bad = Vec::new();
    for text in sample {
        let a = m.parse_element(text).expect("sample element");
        let prime = is_prime(m, &a, 8).unwrap().truth();
        let atom = is_atom(m, &a).unwrap().truth();
        let radical = is_radical(m, &a, 8).unwrap().truth();
        let sf = is_squarefree(m, &a).unwrap().truth();
        for (law, p, q) in [
            ("prime => atom", prime, atom),
            ("prime => radical", prime, radical),
            ("radical => square-free", radical, sf),
            ("atom => square-free", atom, sf),
        ] {
            if p == Some(true) && q == Some(false) {
                bad.push(format!("{}: {law} at {a}", m.spec().to_text()));
            }
        }
    }
    bad
}

fn diagrams(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for inst in &s.instances {
        let m = &inst.monoid;
        let name = m.spec().to_text();
        if !m.is_enumerable() {
            bad.extend(sampled_diagram(m, &["0", "1/2", "1", "5/3", "7"]));
        } else {
            match element_diagram(m, inst.bound) {
                Ok(checks) => {
                    for c in checks.iter().filter(|c| !c.passed()) {
                        bad.push(format!("{name}: {} at {:?}", c.law, c.violations[0]));
                    }
                }
                Err(e) => bad.push(format!("{name}: {e}")),
            }
        }
        match monoid_profile(m, inst.bound) {
            Ok(p) => {
                if !p.is_consistent() {
                    bad.push(format!("{name}: {:?} {:?}", p.conflicts, p.violations));
                }
                rows.push(ClassificationRow::from_profile(name, &p));
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let tc = table_consistency(&rows);
    if tc.fails() {
        bad.push(format!("classification table: {}", tc.summary()));
    }
    let n = s.instances.len();
    s.record(8, &format!("implication diagrams on {n} monoids"), t, bad);
}

fn main() {
    let mut s = Suite::default();
    counting(&mut s);
    separating_example(&mut s);
    condition_suites(&mut s);
    round_trips(&mut s);
    uniqueness(&mut s);
    radical_theory(&mut s);
    catalog(&mut s);
    diagrams(&mut s);
    let failed = s.lines.iter().filter(|l| !l.1).count();
    println!("acceptance: {} of {} criteria passed", s.lines.len() - failed, s.lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
