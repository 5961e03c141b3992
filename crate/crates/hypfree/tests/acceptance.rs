//! One test per acceptance criterion; each prints a PASS or FAIL line.

mod common;

use std::time::{Duration, Instant};

use common::{hypfree, s, save};
use hypfree::harness::{self, CorpusConfig, Harness, HarnessReport};
use hypfree_core::families::{cat_shi, catalan, difference, shi};
use hypfree_core::{free_path, is_free, pentagon, weyl, Arrangement, PathStatus, RootType};

fn report(name: &str, ok: bool, detail: String) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn corpus() -> CorpusConfig {
    let cfg = CorpusConfig::default();
    assert!(cfg.count >= 100);
    cfg
}

fn harness(h: Harness) -> HarnessReport {
    harness::run(h, &corpus(), None).expect("corpus builds")
}

#[test]
fn pentagon_pair() {
    let t = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let sup = save(dir.path(), "sup.txt", &["pentagon", "--super"]);
    let sub = save(dir.path(), "sub.txt", &["pentagon", "--sub"]);
    let sup_free = hypfree(&["check-free", s(&sup)]).stdout;
    let sub_free = hypfree(&["check-free", s(&sub)]).stdout;
    let path = hypfree(&["freepath", s(&sub), s(&sup)]);

    let (a, _) = pentagon();
    let restrictions: Vec<usize> = (0..a.len()).map(|i| a.restrict(i).unwrap().len()).collect();
    let deletions_free = (0..a.len()).filter(|&i| is_free(&a.delete(i).unwrap()).is_free()).count();
    let elapsed = t.elapsed();

    let ok = sup_free == "FREE exponents (1,5,5)\n"
        && sub_free == "FREE exponents (1,3,3)\n"
        && restrictions.iter().all(|&n| n == 5)
        && deletions_free == 0
        && path.code == 0
        && path.stdout == "NONE (16 subsets explored)\n"
        && elapsed <= Duration::from_secs(60);
    report(
        "pentagon",
        ok,
        format!(
            "super {} sub {} |A^H| {restrictions:?}, {deletions_free} free deletions, path {} in {elapsed:.1?}",
            sup_free.trim(),
            sub_free.trim(),
            path.stdout.trim()
        ),
    );
}

#[test]
fn thm12_harness() {
    let r = harness(Harness::Thm12);
    report("thm12", r.checks >= 30 && r.violations == 0, r.summary());
}

#[test]
fn thm13_harness() {
    let r = harness(Harness::Thm13);
    report("thm13", r.checks >= 10 && r.violations == 0, r.summary());
}

#[test]
fn spog_levels_harness() {
    let r = harness(Harness::SpogLevels);
    report("spoglevels", r.checks > 0 && r.violations == 0, r.summary());
}

#[test]
fn addition_deletion_harness() {
    let r = harness(Harness::AddDel);
    report("adddel", r.checks > 0 && r.violations == 0, r.summary());
}

#[test]
fn b_polynomial_harness() {
    let r = harness(Harness::AtMore);
    report("atmore", r.checks >= 50 && r.violations == 0, r.summary());
}

#[test]
fn saito_harness() {
    let r = harness(Harness::Saito);
    report("saito", r.checks > 0 && r.violations == 0, r.summary());
}

fn found(b: &Arrangement, a: &Arrangement) -> bool {
    free_path(b, a).map(|r| r.status == PathStatus::Found).unwrap_or(false)
}

#[test]
fn root_system_families() {
    let t = Instant::now();
    let a2 = weyl(RootType::A2);
    let b2 = weyl(RootType::B2);
    let shi1 = shi(&a2, 1, 1).unwrap();
    let cat1 = catalan(&a2, 1, 1);
    let shi2 = shi(&a2, 2, 2).unwrap();
    let b_shi = shi(&b2, 1, 1).unwrap();
    let b_catshi = cat_shi(&b2, 1, 1).unwrap();

    let shi1_free = is_free(&shi1).is_free();
    let cat1_free = is_free(&cat1).is_free();
    let diff = difference(&cat1, &shi1).len();
    let p1 = found(&shi1, &cat1);
    let p2 = found(&cat1, &shi2);
    let p3 = found(&b_shi, &b_catshi);
    let elapsed = t.elapsed();
    let ok = shi1.len() == 7
        && cat1.len() == 10
        && shi1_free
        && cat1_free
        && diff == 3
        && p1
        && p2
        && p3
        && elapsed <= Duration::from_secs(120);
    report(
        "families",
        ok,
        format!(
            "A2 Shi {} planes free {shi1_free}, Cat {} planes free {cat1_free}, |Cat∖Shi| {diff}, paths {p1} {p2} {p3} in {elapsed:.1?}",
            shi1.len(),
            cat1.len()
        ),
    );
}

#[test]
fn thread_independence() {
    let one = hypfree(&["--json", "--threads", "1", "verify", "thm13"]);
    let four = hypfree(&["--json", "--threads", "4", "verify", "thm13"]);
    let ok = one.code == 0 && four.code == 0 && !one.stdout.is_empty() && one.stdout == four.stdout;
    report("threads", ok, format!("{} bytes at 1 thread, {} at 4", one.stdout.len(), four.stdout.len()));
}
