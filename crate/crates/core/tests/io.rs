use blockforge::catalog::catalog;
use blockforge::io::{
    load_group, load_normal, load_table, parse_generators, parse_table, table_file, table_from_file, table_to_json,
    write_generators, GeneratorFile,
};
use blockforge::{CharacterTable, Cyclotomic, Error};

#[test]
fn generator_files_round_trip_for_every_entry() {
    let dir = tempfile::tempdir().unwrap();
    for e in catalog() {
        let file = GeneratorFile {
            name: Some(e.name.clone()),
            degree: e.degree,
            generators: e.generators.clone(),
        };
        let text = write_generators(&file);
        assert_eq!(parse_generators(&text).unwrap(), file);
        let path = dir.path().join("g.gens");
        std::fs::write(&path, &text).unwrap();
        let loaded = load_group(path.to_str().unwrap(), 20_000).unwrap();
        assert_eq!(loaded.name, e.name);
        assert!(loaded.group.same_elements(&e.group().unwrap()));
    }
}

#[test]
fn tables_round_trip_for_every_entry() {
    let dir = tempfile::tempdir().unwrap();
    for e in catalog() {
        let tbl = CharacterTable::compute(e.group().unwrap()).unwrap();
        let json = table_to_json(&e.name, &tbl).unwrap();
        let path = dir.path().join("t.json");
        std::fs::write(&path, &json).unwrap();
        let (name, back) = load_table(&path).unwrap();
        assert_eq!(name, e.name);
        assert_eq!(back.values(), tbl.values(), "{}", e.name);
        assert_eq!(table_to_json(&name, &back).unwrap(), json, "{}", e.name);
    }
}

#[test]
fn perturbed_s4_table_is_rejected_by_column_orthogonality() {
    let e = blockforge::catalog::lookup("S4").unwrap();
    let tbl = CharacterTable::compute(e.group().unwrap()).unwrap();
    for r in 1..tbl.len() {
        for c in 0..tbl.len() {
            let mut file = table_file("S4", &tbl);
            file.chars[r][c] = &file.chars[r][c] + &Cyclotomic::from_int(1);
            let err = table_from_file(file).unwrap_err();
            let msg = err.to_string();
            assert!(msg.contains("column orthogonality violated (classes "), "{msg}");
        }
    }
}

#[test]
fn shuffled_class_order_is_rematched() {
    let e = blockforge::catalog::lookup("A4").unwrap();
    let tbl = CharacterTable::compute(e.group().unwrap()).unwrap();
    let mut file = table_file("A4", &tbl);
    file.classes.swap(1, 3);
    for row in &mut file.chars {
        row.swap(1, 3);
    }
    file.chars.reverse();
    let (_, back) = table_from_file(file).unwrap();
    assert_eq!(back.values(), tbl.values());
}

#[test]
fn malformed_inputs_report_positions() {
    let err = parse_generators("degree 4\n1 1 3 4\n").unwrap_err();
    assert_eq!(err.to_string(), "not a bijection at line 2");
    assert!(err.is_input_error());
    assert!(matches!(parse_table("{\"group\": \"x\",\n \"exponent\": }"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(load_group("./does-not-exist.gens", 100), Err(Error::UnknownGroup(_))));
}

#[test]
fn normal_subgroup_files_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let g = load_group("S4", 20_000).unwrap();
    let path = dir.path().join("n.gens");
    std::fs::write(&path, "degree 4\n# name V\n2 1 4 3\n3 4 1 2\n").unwrap();
    let (name, n) = load_normal(path.to_str().unwrap(), &g, 100).unwrap();
    assert_eq!((name.as_str(), n.order()), ("V", 4));
    std::fs::write(&path, "degree 4\n2 1 3 4\n").unwrap();
    assert!(matches!(load_normal(path.to_str().unwrap(), &g, 100), Err(Error::NotNormal)));
    std::fs::write(&path, "degree 5\n2 1 3 4 5\n").unwrap();
    assert!(matches!(load_normal(path.to_str().unwrap(), &g, 100), Err(Error::DegreeMismatch { .. })));
}
