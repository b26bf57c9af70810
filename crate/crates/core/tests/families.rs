use poslab::oracle;

#[test]
fn families_agree() {
    let f = oracle::families(1000, 3).unwrap();
    println!("{}: {} cases", f.check, f.cases);
    assert!(f.passed(), "{:#?}", f.failures);
}
