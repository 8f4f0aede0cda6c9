use pcflab::search::{reproduce_table, TableName};

#[test]
fn every_table_matches_its_fixture() {
    for name in TableName::ALL {
        let report = reproduce_table(name).unwrap();
        println!("{report}");
        assert!(report.matches(), "{report}");
    }
}
