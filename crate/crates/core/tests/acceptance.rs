//! The acceptance suite. Prints one PASS/FAIL line per criterion and fails
//! if any criterion fails. Run with `--nocapture` to see the lines.

mod common;

use lcsc::category::{is_left_cancellative, is_right_cancellative, FiniteCategory, Lcsc, MorphismId};
use lcsc::checks::{equivariance, round_trip, semigroup_oracle};
use lcsc::corpus::{self, builtin, CorpusEntry};
use lcsc::filters::{tight_filters, Evaluator, FilterSpace, PathSpace, Semilattice};
use lcsc::groupoid::{
    certify_filters_to_paths, certify_triples_to_germs, germ_groupoid_on_filters, germ_groupoid_on_paths,
    simplicity_verdict, spielberg_groupoid,
};
use lcsc::io::{system_spec, write_category, write_system};
use lcsc::pipeline::{self, grading_checks, product_grading, Analysis, Config};
use lcsc::semigroup::generate_semigroup;
use lcsc::zs::random::{random_system, rng, MAX_MORPHISMS};
use lcsc::zs::{compare_conditions, pseudo_freeness_witness, validate_system, zs_product};
use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

struct Outcome {
    id: usize,
    name: &'static str,
    result: Result<String, String>,
    elapsed: Duration,
}

fn criterion(id: usize, name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
    Outcome { id, name, result, elapsed: start.elapsed() }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> Result<T, String>) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let out = f()?;
    let t = start.elapsed();
    if t > limit {
        return Err(format!("{what} took {t:?}, limit {limit:?}"));
    }
    Ok((out, t))
}

fn err<E: std::fmt::Display>(name: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{name}: {e}")
}

fn groupoid_parts(entry: &CorpusEntry) -> Result<Analysis, String> {
    Analysis::run(entry.category.clone(), &Config::default()).map_err(err(entry.name))
}

fn c1_semigroup_oracle(entries: &[CorpusEntry]) -> Result<String, String> {
    let mut slowest = Duration::ZERO;
    let mut pairs = 0;
    let small: Vec<&CorpusEntry> = entries.iter().filter(|e| e.category.num_morphisms() <= 12).collect();
    for entry in &small {
        let ((), t) = timed(Duration::from_secs(10), entry.name, || {
            let l = entry.lcsc();
            let s = generate_semigroup(&l, 1 << 16).map_err(err(entry.name))?;
            let report = semigroup_oracle(&l, &s).map_err(err(entry.name))?;
            let closure = common::bijection_closure(&entry.category, 1 << 16).ok_or("closure cap")?;
            if closure.len() != s.len() {
                return Err(format!("{}: {} elements, closure has {}", entry.name, s.len(), closure.len()));
            }
            pairs += report.products_checked;
            Ok(())
        })?;
        slowest = slowest.max(t);
    }
    let names: BTreeSet<&str> = small.iter().map(|e| e.name).collect();
    for required in
        ["identity", "arrow", "fork", "parallel", "chain2", "coequalized_pair", "swap_product", "fork_product"]
    {
        if !names.contains(required) {
            return Err(format!("corpus lacks {required}"));
        }
    }
    if small.len() < 10 {
        return Err(format!("only {} categories", small.len()));
    }
    Ok(format!("{} categories, {pairs} products, slowest {slowest:.2?}", small.len()))
}

fn c2_tight_agreement(entries: &[CorpusEntry]) -> Result<String, String> {
    let mut slowest = Duration::ZERO;
    let mut total = 0;
    for entry in entries {
        let (n, t) = timed(Duration::from_secs(5), entry.name, || {
            let l = entry.lcsc();
            let s = generate_semigroup(&l, 1 << 16).map_err(err(entry.name))?;
            let e = Semilattice::of_semigroup(&l, &s).map_err(err(entry.name))?;
            let fs = FilterSpace::new(&l, &e).map_err(err(entry.name))?;
            let mut ps = PathSpace::new(&l);
            let r = tight_filters(&l, &e, &fs, &mut ps, &Evaluator::ALL, 1 << 20).map_err(err(entry.name))?;
            if r.evaluations.len() != 4 || r.evaluations.iter().any(|(_, t)| *t != r.tight) {
                return Err(format!("{}: evaluators disagree", entry.name));
            }
            Ok(r.tight.len())
        })?;
        total += n;
        slowest = slowest.max(t);
    }
    Ok(format!("{} categories, {total} tight filters, slowest {slowest:.2?}", entries.len()))
}

fn c3_round_trip(entries: &[CorpusEntry]) -> Result<String, String> {
    let (mut filters, mut basics) = (0, 0);
    for entry in entries {
        let a = groupoid_parts(entry)?;
        let rt = round_trip(&a.l, &a.e, &a.fs, &a.ps).map_err(err(entry.name))?;
        filters += rt.filters_checked;
        basics += rt.basic_sets_checked;
    }
    Ok(format!("{filters} filters, {basics} basic sets exchanged"))
}

fn c4_equivariance(entries: &[CorpusEntry]) -> Result<String, String> {
    let mut pairs = 0;
    for entry in entries {
        let a = groupoid_parts(entry)?;
        pairs += equivariance(&a.l, &a.s, &a.e, &a.fs).map_err(err(entry.name))?;
    }
    Ok(format!("{pairs} (element, filter) pairs"))
}

fn c5_triple_certificate(entries: &[CorpusEntry]) -> Result<String, String> {
    let (mut arrows, mut products) = (0, 0);
    for entry in entries {
        let l = entry.lcsc();
        let s = generate_semigroup(&l, 1 << 16).map_err(err(entry.name))?;
        let e = Semilattice::of_semigroup(&l, &s).map_err(err(entry.name))?;
        let fs = FilterSpace::new(&l, &e).map_err(err(entry.name))?;
        let mut ps = PathSpace::new(&l);
        let r = tight_filters(&l, &e, &fs, &mut ps, &Evaluator::ALL, 1 << 20).map_err(err(entry.name))?;
        let gp = germ_groupoid_on_paths(&l, &s, &ps).map_err(err(entry.name))?;
        let gf = germ_groupoid_on_filters(&l, &s, &e, &fs, &r.tight).map_err(err(entry.name))?;
        certify_filters_to_paths(&l, &e, &fs, &ps, &gf, &gp).map_err(err(entry.name))?;
        let tg = spielberg_groupoid(&l, &ps).map_err(err(entry.name))?;
        let c = certify_triples_to_germs(&l, &ps, &tg, &gp).map_err(err(entry.name))?;
        arrows += c.arrows;
        products += usize::from(entry.product.is_some());
    }
    Ok(format!("{} certificates ({products} products), {arrows} arrows", entries.len()))
}

fn c6_effective_minimal(entries: &[CorpusEntry]) -> Result<String, String> {
    let mut gated = 0;
    for entry in entries {
        let a = groupoid_parts(entry)?;
        let v = simplicity_verdict(&a.l, &a.s, &a.on_paths.groupoid, &a.fs.ultra, &a.tight.tight)
            .map_err(err(entry.name))?;
        gated += usize::from(v.gate.holds);
        if v.gate.holds && v.effective_direct != v.effective_condition {
            return Err(format!("{}: effectiveness disagrees", entry.name));
        }
        if v.minimal_direct != v.minimal_condition {
            return Err(format!("{}: minimality disagrees", entry.name));
        }
        if let Some(p) = &entry.product {
            let base = Lcsc::new(p.system.cat.clone()).map_err(err(entry.name))?;
            compare_conditions(&base, &p.system, &a.l, &p.product).map_err(err(entry.name))?;
        }
    }
    Ok(format!("{} categories, gate holds on {gated}", entries.len()))
}

fn m(i: usize) -> MorphismId {
    MorphismId(i as u32)
}

/// Minimal common extensions by brute force, as `≈` classes.
fn mce_classes(cat: &FiniteCategory, x: usize, y: usize) -> BTreeSet<BTreeSet<usize>> {
    let n = cat.num_morphisms();
    let leq = |a: usize, b: usize| common::leq(cat, a, b);
    let common: Vec<usize> = (0..n).filter(|&z| leq(x, z) && leq(y, z)).collect();
    common
        .iter()
        .filter(|&&z| common.iter().all(|&w| !leq(w, z) || leq(z, w)))
        .map(|&z| (0..n).filter(|&w| leq(z, w) && leq(w, z)).collect())
        .collect()
}

fn c7_zs_laws() -> Result<String, String> {
    let start = Instant::now();
    let mut r = rng(2024);
    let (mut pf_count, mut rc_count, mut pairs) = (0, 0, 0);
    for k in 0..120 {
        let (_, sys) = random_system(&mut r, k % 2 == 0).map_err(err("generator"))?;
        if sys.cat.num_morphisms() > MAX_MORPHISMS || sys.group.len() > 4 {
            return Err("generator exceeded its bounds".into());
        }
        if !validate_system(&sys).valid {
            return Err(format!("system {k} is invalid"));
        }
        let p = zs_product(&sys).map_err(err("product"))?;
        if !is_left_cancellative(&p.cat).map_err(err("product"))? || common::left_cancellation_failure(&p.cat).is_some()
        {
            return Err(format!("product {k} is not left cancellative"));
        }
        let pf = pseudo_freeness_witness(&sys).is_none();
        let rc = common::right_cancellation_failure(&p.cat).is_none();
        if rc != pf || rc != is_right_cancellative(&p.cat).map_err(err("product"))? {
            return Err(format!("system {k}: right cancellative {rc}, pseudo free {pf}"));
        }
        pf_count += usize::from(pf);
        rc_count += usize::from(rc);
        let unit = sys.group.unit();
        for x in 0..p.cat.num_morphisms() {
            for y in 0..p.cat.num_morphisms() {
                pairs += 1;
                let lifted: BTreeSet<BTreeSet<usize>> = mce_classes(&sys.cat, p.base(m(x)).idx(), p.base(m(y)).idx())
                    .into_iter()
                    .map(|class| {
                        let rep = *class.iter().next().expect("classes are nonempty");
                        let z = p.id(m(rep), unit).idx();
                        (0..p.cat.num_morphisms())
                            .filter(|&w| common::leq(&p.cat, z, w) && common::leq(&p.cat, w, z))
                            .collect()
                    })
                    .collect();
                if mce_classes(&p.cat, x, y) != lifted {
                    return Err(format!("system {k}: alignment law fails at ({x}, {y})"));
                }
            }
        }
    }
    if 120 - pf_count < 5 {
        return Err(format!("only {} systems fail pseudo-freeness", 120 - pf_count));
    }
    if start.elapsed() > Duration::from_secs(60) {
        return Err(format!("took {:?}", start.elapsed()));
    }
    Ok(format!("120 systems ({pf_count} pseudo free, {rc_count} right cancellative), {pairs} aligned pairs"))
}

fn c8_cocycles(entries: &[CorpusEntry]) -> Result<String, String> {
    let (mut graded, mut layers, mut skipped) = (0, 0, 0);
    for entry in entries {
        let Some(d) = &entry.degree else { continue };
        graded += 1;
        let a = groupoid_parts(entry)?;
        match &entry.product {
            None => {
                let g = grading_checks(&a, d).map_err(err(entry.name))?;
                if !g.degree_map.valid {
                    return Err(format!("{}: degree map rejected", entry.name));
                }
                layers += g.layers.len();
            }
            Some(p) => {
                let g = product_grading(&a, &p.system, &p.product, &p.base_degree).map_err(err(entry.name))?;
                layers += g.layers.iter().filter(|x| x.group_kernel.is_some()).count();
                skipped += usize::from(g.layer_cocycle_skipped.is_some());
            }
        }
    }
    Ok(format!("{graded} graded categories, {layers} layers, {skipped} products outside the pseudo-free hypothesis"))
}

fn c9_action_groupoids(entries: &[CorpusEntry]) -> Result<String, String> {
    let (mut certified, mut intertwined) = (0, 0);
    for entry in entries {
        let Some(d) = &entry.degree else { continue };
        let (a, d) = match &entry.product {
            None => (groupoid_parts(entry)?, d.clone()),
            Some(p) => (
                Analysis::run(p.system.cat.clone(), &Config::default()).map_err(err(entry.name))?,
                p.base_degree.clone(),
            ),
        };
        let g = grading_checks(&a, &d).map_err(err(entry.name))?;
        let c = g.action_groupoid.ok_or_else(|| format!("{}: no action groupoid", entry.name))?;
        certified += 1;
        intertwined += c.intertwined;
    }
    Ok(format!("{certified} certificates, {intertwined} arrows intertwined"))
}

fn c10_determinism(entries: &[CorpusEntry]) -> Result<String, String> {
    let cfg = Config::default();
    let mut files = Vec::new();
    for entry in entries {
        files.push(match &entry.product {
            None => write_category(&entry.spec),
            Some(p) => write_system(&system_spec(&p.system, p.base_spec.clone(), Some(&p.base_degree))),
        });
    }
    for (entry, text) in entries.iter().zip(&files) {
        let a = pipeline::to_json(&pipeline::analyze(text, &cfg).map_err(err(entry.name))?);
        let b = pipeline::to_json(&pipeline::analyze(text, &cfg).map_err(err(entry.name))?);
        if a != b {
            return Err(format!("{}: analyze output differs between runs", entry.name));
        }
    }
    if corpus::generate(7, 50).map_err(err("corpus"))? != corpus::generate(7, 50).map_err(err("corpus"))? {
        return Err("corpus generation is not reproducible".into());
    }
    let dir = tempfile::tempdir().map_err(err("tempdir"))?;
    let fork = dir.path().join("fork.json");
    std::fs::write(&fork, &files[2]).map_err(err("write"))?;
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_lcsc")).args(args).output().map_err(err("spawn"))?;
        if !out.status.success() {
            return Err(format!("{args:?} exited with {}", out.status));
        }
        Ok(out.stdout)
    };
    let path = fork.to_str().ok_or("path")?;
    if run(&["analyze", "--json", path])? != run(&["analyze", "--json", path])? {
        return Err("CLI analyze output differs between runs".into());
    }
    if run(&["corpus", "--seed", "7", "--n", "50"])? != run(&["corpus", "--seed", "7", "--n", "50"])? {
        return Err("CLI corpus output differs between runs".into());
    }
    Ok(format!("{} inputs analysed twice, corpus(seed 7, n 50) reproduced", entries.len()))
}

#[test]
fn acceptance() {
    let entries = builtin();
    let outcomes = vec![
        criterion(1, "semigroup arithmetic against partial bijections", || c1_semigroup_oracle(&entries)),
        criterion(2, "four-way tight filter agreement", || c2_tight_agreement(&entries)),
        criterion(3, "filter/path-set round trip and topology exchange", || c3_round_trip(&entries)),
        criterion(4, "equivariance of the path-set map", || c4_equivariance(&entries)),
        criterion(5, "tight groupoid and triple groupoid certificate", || c5_triple_certificate(&entries)),
        criterion(6, "effective and minimal: direct vs combinatorial", || c6_effective_minimal(&entries)),
        criterion(7, "Zappa-Szep laws on random systems", c7_zs_laws),
        criterion(8, "graded and layer cocycles well defined", || c8_cocycles(&entries)),
        criterion(9, "action groupoid isomorphism and intertwining", || c9_action_groupoids(&entries)),
        criterion(10, "determinism", || c10_determinism(&entries)),
    ];
    let mut failed = Vec::new();
    for o in &outcomes {
        let (tag, detail) = match &o.result {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!("acceptance {:>2} {tag} {} [{:.2?}]: {detail}", o.id, o.name, o.elapsed);
        if o.result.is_err() {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
