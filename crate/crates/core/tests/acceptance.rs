//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p lietype-core --test acceptance`.

use std::time::{Duration, Instant};

use lietype::cyclotomic::{delta, gauss_sum, rat};
use lietype::dltables::{DLTables, Semisimple};
use lietype::numtheory::is_prime;
use lietype::qpoly::QPoly;
use lietype::rootdata::{BuiltinGroup, RootDatum};
use lietype::unipotent::{count_unipotent, xcirc};
use lietype::weyl::{class_count, class_count_product, CartanType, ElementStore, WeylGroup};
use lietype::{CycNum, Exec};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ty(s: &str) -> CartanType {
    s.parse().unwrap()
}

const SL2_QS: [u64; 6] = [3, 5, 7, 9, 11, 13];

fn run_checks(t: &DLTables, names: &[&str]) -> Result<(), String> {
    for name in names {
        let o = t.run_check(name, Exec::default()).map_err(|e| e.to_string())?;
        ensure(o.passed, || format!("{}({}) {}: {}", t.group, t.q, o.name, o.detail))?;
    }
    Ok(())
}

fn census() -> Outcome {
    let start = Instant::now();
    let expected = [("G2", 10), ("F4", 37), ("E6", 30), ("2E6", 30), ("E7", 76), ("E8", 166)];
    for (name, want) in expected {
        let got = count_unipotent(&ty(name), Exec::default()).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{name}: {got} != {want}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("G2 10, F4 37, E6 30, 2E6 30, E7 76, E8 166 in {elapsed:.2?}"))
}

fn cuspidal_counts() -> Outcome {
    let expected = [("G2", 4), ("F4", 7), ("E6", 2), ("E7", 2), ("E8", 13), ("2E6", 3), ("2A5", 1), ("B2", 1), ("D4", 1)];
    for (name, want) in expected {
        let got = xcirc(&ty(name)).len();
        ensure(got == want, || format!("{name}: {got} != {want}"))?;
    }
    for n in 1..=20 {
        let got = xcirc(&ty(&format!("A{n}"))).len();
        ensure(got == 0, || format!("A{n}: {got} cuspidal"))?;
    }
    Ok("all nine listed types match; A1..A20 have none".into())
}

fn order_polynomials() -> Outcome {
    let sl2 = RootDatum::builtin(BuiltinGroup::SL2);
    ensure(sl2.group_order_poly() == QPoly::from_ints(&[0, -1, 0, 1]), || format!("|SL2| = {}", sl2.group_order_poly()))?;
    // orders of small finite groups, known independently
    let known: [(BuiltinGroup, i64, i64); 7] = [
        (BuiltinGroup::SL2, 3, 24),
        (BuiltinGroup::GL2, 3, 48),
        (BuiltinGroup::PGL2, 3, 24),
        (BuiltinGroup::SL3, 2, 168),
        (BuiltinGroup::GL3, 2, 168),
        (BuiltinGroup::Sp4, 2, 720),
        (BuiltinGroup::SU3, 2, 216),
    ];
    for (g, q, want) in known {
        let got = RootDatum::builtin(g).group_order_poly().eval_at(q);
        ensure(got == rat(want, 1), || format!("|{g}({q})| = {got}, expected {want}"))?;
    }
    for g in BuiltinGroup::ALL {
        let r = RootDatum::builtin(g).order_report();
        ensure(r.steinberg_identity, || format!("{g}: Steinberg identity fails"))?;
        ensure(r.t1_factorization, || format!("{g}: |T_1| factorization fails"))?;
        ensure(r.valuation_equals_n, || format!("{g}: q-valuation of |G| differs from N"))?;
    }
    Ok(format!("|SL2| = q^3 - q; identities hold for all {} built-in groups", BuiltinGroup::ALL.len()))
}

fn sl2_tables() -> Outcome {
    let mut slowest = Duration::ZERO;
    for q in SL2_QS {
        let start = Instant::now();
        let t = DLTables::sl2(q).map_err(|e| e.to_string())?;
        ensure(t.table.len() as u64 == q + 4, || format!("q={q}: {} rows", t.table.len()))?;
        run_checks(&t, &["orthogonality", "dimension", "scalar"])?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(30), || format!("q={q} took {elapsed:?}"))?;
        slowest = slowest.max(elapsed);
    }
    Ok(format!("q in {SL2_QS:?}; slowest {slowest:.2?}"))
}

fn sl2_uniform() -> Outcome {
    let mut signs = Vec::new();
    for q in SL2_QS {
        let t = DLTables::sl2(q).map_err(|e| e.to_string())?;
        let p = t.uniform_projector();
        ensure(p.rank as u64 == q + 2, || format!("q={q}: rank {}", p.rank))?;
        ensure(t.fusion_groups().len() as u64 == q + 2, || format!("q={q}: fused classes"))?;
        run_checks(&t, &["uniform", "luconj"])?;
        let j = t.class_index("J").unwrap();
        let f = t.indicator(&[j]);
        ensure(p.apply(&t, &f).unwrap() != f, || format!("q={q}: f_J is uniform"))?;
        let o = t.run_check("luconj", Exec::default()).unwrap();
        signs.push(o.detail.rsplit("= ").next().unwrap_or("").split(' ').next().unwrap_or("?").to_string());
    }
    Ok(format!("rank q+2, P^2 = P = P*, fused classes fixed, f_J not; non-uniform part sign per q: {}", signs.join(" ")))
}

fn gl2_identity() -> Outcome {
    for q in [3u64, 5, 7] {
        let t = DLTables::gl2(q).map_err(|e| e.to_string())?;
        let p = t.uniform_projector();
        ensure(p.is_identity(), || format!("q={q}: projection has rank {}", p.rank))?;
        for k in 0..t.num_classes() {
            let f = t.indicator(&[k]);
            ensure(p.apply(&t, &f).unwrap() == f, || format!("q={q}: class {} not fixed", t.classes[k].label))?;
        }
        run_checks(&t, &["uniform-all", "semisimple"])?;
    }
    Ok("q in [3, 5, 7]: P = I on every class indicator; one semisimple character per component".into())
}

fn lemma() -> Outcome {
    let mut total = 0;
    let mut zero_cases = 0;
    for q in [5u64, 7] {
        let t = DLTables::sl2(q).map_err(|e| e.to_string())?;
        let h = (q - 1) / 2;
        for s0 in [Semisimple::Central(0), Semisimple::Central(h), Semisimple::Split(1, q - 2)] {
            let (n, failures) = t.lemma_at(s0);
            ensure(failures.is_empty(), || failures.join("; "))?;
            ensure(n > 0, || format!("no instances for {s0:?}"))?;
            total += n;
            zero_cases += t.classes.iter().filter(|c| c.semisimple != s0).count();
        }
    }
    Ok(format!("{total} class/torus instances on SL2(5), SL2(7), including {zero_cases} zero cases per torus"))
}

fn restriction() -> Outcome {
    for q in [3u64, 5, 7] {
        let t = DLTables::sl2(q).map_err(|e| e.to_string())?;
        run_checks(&t, &["restriction"])?;
        let n = t.graph_components().len() as u64;
        ensure(n == q + 1, || format!("q={q}: {n} components"))?;
    }
    Ok("q in [3, 5, 7]: multiplicity-free, r in {1,2}, R_w restricts, D/r, transfer formula, q+1 components".into())
}

fn degree_polynomials() -> Outcome {
    let mut rows = 0;
    for q in SL2_QS {
        let t = DLTables::sl2(q).map_err(|e| e.to_string())?;
        run_checks(&t, &["degree-poly"])?;
        let halves: Vec<usize> = (0..t.table.len()).filter(|&i| t.degree_invariants(i).unwrap().n == 2).collect();
        ensure(halves.len() == 4, || format!("q={q}: {} rows with n = 2", halves.len()))?;
        for i in halves {
            let d = t.table.degree(i) as u64;
            ensure(d == q.div_ceil(2) || d == (q - 1) / 2, || format!("q={q}: n = 2 on degree {d}"))?;
        }
        rows += t.table.len();
    }
    for q in [3u64, 5, 7] {
        let t = DLTables::gl2(q).map_err(|e| e.to_string())?;
        run_checks(&t, &["degree-poly"])?;
        rows += t.table.len();
    }
    Ok(format!("{rows} rows: D(q) = degree, D | |G|, shape, cuspidality, n"))
}

fn ring_axioms() -> Result<usize, String> {
    let mut pool: Vec<CycNum> = Vec::new();
    for n in [1u64, 3, 4, 5, 8, 12] {
        for k in 0..n as i64 {
            pool.push(CycNum::root_of_unity(n, k).scale(&rat(k + 1, 2)));
        }
    }
    pool.push(gauss_sum(7).unwrap());
    pool.push(CycNum::from_int(-3));
    let sample: Vec<&CycNum> = pool.iter().step_by(3).collect();
    let mut count = 0;
    for a in &sample {
        for b in &sample {
            ensure(*a + *b == *b + *a && *a * *b == *b * *a, || format!("commutativity fails for {a}, {b}"))?;
            for c in &sample {
                count += 1;
                ensure(&(*a * *b) * *c == *a * &(*b * *c), || "associativity".into())?;
                ensure(*a * &(*b + *c) == &(*a * *b) + &(*a * *c), || "distributivity".into())?;
            }
            if !b.is_zero() {
                let quotient = a.div(b).unwrap();
                ensure(&quotient * *b == (*a).clone(), || format!("division fails for {a} / {b}"))?;
            }
        }
    }
    Ok(count)
}

fn property_suites() -> Outcome {
    let triples = ring_axioms()?;
    for p in (3u64..=31).filter(|&p| is_prime(p)) {
        let g = gauss_sum(p).unwrap();
        ensure(&g * &g == CycNum::from_int(delta(p) * p as i64), || format!("Gauss sum square at p={p}"))?;
        let (re, im) = g.to_complex();
        ensure(((re * re + im * im) - p as f64).abs() < 1e-9, || format!("|g|^2 at p={p}"))?;
    }
    let mut types = Vec::new();
    for n in 1..=7 {
        types.push(format!("A{n}"));
    }
    for n in 2..=6 {
        types.push(format!("B{n}"));
    }
    for n in 4..=6 {
        types.push(format!("D{n}"));
    }
    types.extend(["G2", "F4", "E6"].map(String::from));
    for name in &types {
        let t = ty(name);
        let g = WeylGroup::new(t);
        ensure(g.order() <= 51840, || format!("{name} too large"))?;
        let store = ElementStore::enumerate(&g, 51840, Exec::default()).map_err(|e| e.to_string())?;
        let brute = g.class_count_bruteforce(&store) as u64;
        let formula = class_count(&t).map_err(|e| e.to_string())?;
        ensure(brute == formula, || format!("{name}: formula {formula}, enumeration {brute}"))?;
    }
    for (name, order) in [("2A3", 8u128), ("2A5", 48), ("3D4", 12), ("2E6", 1152)] {
        let g = WeylGroup::new(ty(name));
        let rel = g.relative_weyl_type(&[]).map_err(|e| e.to_string())?;
        let store = ElementStore::enumerate(&g, 51840, Exec::default()).map_err(|e| e.to_string())?;
        let fixed = store.sigma_fixed(&g);
        ensure(fixed.len() as u128 == rel.order() && rel.order() == order, || {
            format!("{name}: |W^sigma| = {}, relative type {rel} of order {}", fixed.len(), rel.order())
        })?;
        // conjugacy classes of the fixed-point subgroup, counted inside it
        let elems: Vec<_> = fixed.iter().map(|&i| g.element_from_key(store.keys()[i])).collect();
        let keys: std::collections::HashSet<u64> = elems.iter().map(|e| g.key(e)).collect();
        let mut seen = std::collections::HashSet::new();
        let mut classes = 0u64;
        for e in &elems {
            if seen.contains(&g.key(e)) {
                continue;
            }
            classes += 1;
            for x in &elems {
                let c = x.mul(e).mul(&x.inverse());
                debug_assert!(keys.contains(&g.key(&c)));
                seen.insert(g.key(&c));
            }
        }
        let want = class_count_product(&rel).map_err(|e| e.to_string())?;
        ensure(classes == want, || format!("{name}: W^sigma has {classes} classes, {rel} has {want}"))?;
    }
    Ok(format!("{triples} ring-axiom triples, Gauss sums p <= 31, {} Weyl types, 4 twisted fixed-point groups", types.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("unipotent census", census),
        ("cuspidal counts", cuspidal_counts),
        ("order polynomials", order_polynomials),
        ("SL2 character tables", sl2_tables),
        ("SL2 uniform functions", sl2_uniform),
        ("GL2 uniform projection", gl2_identity),
        ("semisimple averaging lemma", lemma),
        ("restriction GL2 to SL2", restriction),
        ("degree polynomials", degree_polynomials),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{elapsed:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
