use poslab::oracle::{self, Finding};

fn run(f: Finding) {
    println!("{}: {} cases", f.check, f.cases);
    assert!(f.passed(), "{:#?}", f.failures);
}

#[test]
fn closure_conditions_match_words() {
    run(oracle::closure_conditions_vs_words(3).unwrap());
}

#[test]
fn positional_implies_aperiodic() {
    run(oracle::aperiodicity(100, 6, 2024).unwrap());
}

#[test]
fn classification_table() {
    run(oracle::classification_table().unwrap());
}

#[test]
fn prefix_independent_shortcut() {
    run(oracle::prefix_independent_check().unwrap());
}

#[test]
fn union_closure() {
    run(oracle::unions(200, 50, 77).unwrap());
}

#[test]
fn product_of_gf_a_with_itself() {
    run(oracle::product_sanity().unwrap());
}
