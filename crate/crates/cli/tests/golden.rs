mod common;

#[test]
fn reports_match_golden_files() {
    for (name, args) in common::GOLDEN {
        assert_eq!(common::golden_diff(name, args), None, "{}", name);
    }
}

#[test]
fn golden_reports_carry_the_expected_quotients() {
    let w = std::fs::read_to_string(common::golden_path("w")).unwrap();
    assert!(w.contains("derived series: 6, 5, 2, 0"));
    let vir = std::fs::read_to_string(common::golden_path("vir")).unwrap();
    assert!(vir.contains("basis: L_0, L_1"));
    assert!(vir.contains("[L_0, L_1] = -L_1"));
    assert!(vir.contains("derived series: 2, 1, 0"));
    assert!(vir.contains("solvable: yes"));
    let tsv = std::fs::read_to_string(common::golden_path("tsv")).unwrap();
    assert!(tsv.contains("truncated quotient at level 1 (dimension 3)"));
    assert!(tsv.contains("[L_0, Y_1/2] = -2*Y_1/2"));
    assert!(tsv.contains("[L_0, M_0] = -3*M_0"));
}
