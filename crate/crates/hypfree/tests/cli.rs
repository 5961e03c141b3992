mod common;

use common::{hypfree, s, save};

const BRAID: &str = "field Q\nrank 3\n1 0 0\n0 1 0\n1 -1 0\n0 0 1\n";
const GENERIC: &str = "field Q\nrank 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n";

#[test]
fn check_free_and_exponents() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("braid.txt");
    std::fs::write(&p, BRAID).unwrap();
    let r = hypfree(&["check-free", s(&p)]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "FREE exponents (1,1,2)\n"));
    assert_eq!(hypfree(&["exponents", s(&p)]).stdout, "(1,1,2)\n");

    let g = dir.path().join("generic.txt");
    std::fs::write(&g, GENERIC).unwrap();
    assert!(hypfree(&["check-free", s(&g)]).stdout.starts_with("NOT_FREE"));
    assert_eq!(hypfree(&["spog", s(&g)]).stdout, "SPOG POexp (1,2,2) level 2\n");
}

#[test]
fn certificates_round_trip_through_check_cert() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("braid.txt");
    let g = dir.path().join("generic.txt");
    std::fs::write(&b, BRAID).unwrap();
    std::fs::write(&g, GENERIC).unwrap();
    let certs = [
        save(dir.path(), "free.json", &["--json", "check-free", s(&b)]),
        save(dir.path(), "notfree.json", &["--json", "check-free", s(&g)]),
        save(dir.path(), "spog.json", &["--json", "spog", s(&g)]),
        save(dir.path(), "path.json", &["--json", "freepath", s(&b), s(&b)]),
    ];
    for c in &certs {
        let r = hypfree(&["check-cert", s(c)]);
        assert_eq!(r.code, 0, "{}: {}", c.display(), r.stdout);
        assert!(r.stdout.starts_with("VALID"));
    }

    let text = std::fs::read_to_string(&certs[0]).unwrap();
    let tampered = text.replacen("\"saito_constant\": \"", "\"saito_constant\": \"3*", 1);
    let t = dir.path().join("tampered.json");
    std::fs::write(&t, tampered).unwrap();
    let r = hypfree(&["check-cert", s(&t)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("INVALID"));

    std::fs::write(&t, "{\"kind\": \"free\"}").unwrap();
    assert_eq!(hypfree(&["check-cert", s(&t)]).code, 2);
}

#[test]
fn pentagon_files_and_free_path() {
    let dir = tempfile::tempdir().unwrap();
    let sup = save(dir.path(), "sup.txt", &["pentagon", "--super"]);
    let sub = save(dir.path(), "sub.txt", &["pentagon", "--sub"]);
    assert_eq!(hypfree(&["check-free", s(&sup)]).stdout, "FREE exponents (1,5,5)\n");
    assert_eq!(hypfree(&["check-free", s(&sub)]).stdout, "FREE exponents (1,3,3)\n");
    let r = hypfree(&["freepath", s(&sub), s(&sup)]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "NONE (16 subsets explored)\n"));
    let c = save(dir.path(), "none.json", &["--json", "freepath", s(&sub), s(&sup)]);
    assert!(hypfree(&["check-cert", s(&c)]).stdout.contains("all 16 subsets"));
}

#[test]
fn families_and_k2_spelling() {
    let dir = tempfile::tempdir().unwrap();
    let a = save(dir.path(), "a.txt", &["family", "shi", "--type", "B2", "-k", "1", "-k2", "1"]);
    let b = save(dir.path(), "b.txt", &["family", "shi", "--type", "B2", "-k", "1", "--k2", "1"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(hypfree(&["check-free", s(&a)]).stdout.starts_with("FREE"));
    let w = save(dir.path(), "w.txt", &["family", "weyl", "--type", "G2", "-k", "0"]);
    assert_eq!(hypfree(&["check-free", s(&w)]).stdout, "FREE exponents (1,1,5)\n");
}

#[test]
fn bpoly_uses_file_order() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("braid.txt");
    std::fs::write(&p, BRAID).unwrap();
    let r = hypfree(&["bpoly", "--delete", "3", s(&p)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("deg B = "));
    assert_eq!(hypfree(&["bpoly", "--delete", "4", s(&p)]).code, 2);
}

#[test]
fn affine_input_is_coned() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("lines.txt");
    std::fs::write(&p, "field Q\naffine 2\n1 0 0\n0 1 0\n1 1 1\n").unwrap();
    let r = hypfree(&["check-free", s(&p)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("FREE") || r.stdout.starts_with("NOT_FREE"));
    assert!(hypfree(&["charpoly", s(&p)]).stdout.contains('t'));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "field Q\nrank 3\n1 0\n").unwrap();
    let r = hypfree(&["check-free", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
    assert_eq!(hypfree(&["frobnicate"]).code, 2);
    assert_eq!(hypfree(&["--help"]).code, 0);

    let small = dir.path().join("small.txt");
    std::fs::write(&small, GENERIC).unwrap();
    let r = hypfree(&["--dmax", "1", "spog", s(&small)]);
    assert_eq!(r.code, 3, "{}", r.stdout);

    let r = hypfree(&["verify", "thm12", "--count", "10", "--random-only"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("thm12: 10 instances"));
}
