use blockforge::catalog::{catalog, lookup};
use blockforge::verify::{verify_entry, Suite};
use blockforge::CharacterTable;

#[test]
fn minimum_catalog_is_present() {
    for name in [
        "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "K4", "D4", "D5", "Q8", "S3", "S4", "A4",
        "A5", "SL(2,3)", "C7:C3", "C5:C4", "C3xS3",
    ] {
        lookup(name).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for (g, n) in [
        ("A4", "K4"),
        ("S4", "A4"),
        ("S4", "K4"),
        ("C7:C3", "C7"),
        ("C5:C4", "C5"),
        ("SL(2,3)", "Q8"),
    ] {
        let e = lookup(g).unwrap();
        let grp = e.group().unwrap();
        let sub = e.normal_subgroup(&grp, n).unwrap().unwrap();
        assert!(grp.is_normal_subgroup(&sub), "{g} > {n}");
    }
}

#[test]
fn stated_orders_and_normal_subgroups_hold() {
    for e in catalog() {
        let g = e.group().unwrap();
        assert_eq!(g.order(), e.expected.order, "{}", e.name);
        for (n, gens) in &e.normal_subgroups {
            let sub = g.subgroup_generated(gens).unwrap();
            assert!(sub.order() < g.order(), "{} > {n} is proper", e.name);
            assert!(g.is_normal_subgroup(&sub), "{} > {n}", e.name);
        }
    }
}

#[test]
fn golden_data_matches_recomputation() {
    for e in catalog() {
        let tbl = CharacterTable::compute(e.group().unwrap()).unwrap();
        assert_eq!(tbl.len(), e.expected.class_count, "{}", e.name);
        if let Some(d) = &e.expected.degrees {
            assert_eq!(tbl.degrees(), d.as_slice(), "{}", e.name);
        }
    }
    let a4 = lookup("A4").unwrap();
    assert_eq!(a4.expected.order, 12);
    assert!(a4.normal_subgroups.iter().any(|(n, _)| n == "K4"));
    assert_eq!(lookup("S4").unwrap().expected.order, 24);
    assert_eq!(lookup("C7:C3").unwrap().expected.order, 21);
}

#[test]
fn every_suite_passes_on_every_entry() {
    for e in catalog() {
        for r in verify_entry(&e, &Suite::ALL, 0).unwrap() {
            assert!(r.passed, "[{}] {}: {}", r.suite, r.subject, r.detail);
        }
    }
}
