use su2k_core::fixtures::{verify, FixtureSet, Group};

fn failing(group: Group) -> Vec<String> {
    verify(&FixtureSet::reference())
        .into_iter()
        .filter(|c| c.group == group && !c.pass)
        .map(|c| c.name)
        .collect()
}

#[test]
fn symbols_and_generators_match() {
    let checks = verify(&FixtureSet::reference());
    for c in checks
        .iter()
        .filter(|c| matches!(c.group, Group::Symbols | Group::Generators))
    {
        println!("{} {:.2e} {}", c.name, c.error, c.detail);
        assert!(c.pass, "{}: {:e}", c.name, c.error);
    }
    assert_eq!(
        checks
            .iter()
            .filter(|c| c.group == Group::Generators)
            .count(),
        3 * (2 + 1 + 4)
    );
}

#[test]
fn table_iii_words_are_exact() {
    let checks = verify(&FixtureSet::reference());
    let iii: Vec<_> = checks
        .iter()
        .filter(|c| c.group == Group::TableIII)
        .collect();
    assert_eq!(iii.len(), 9);
    for c in iii {
        assert!(c.pass, "{} {}", c.name, c.detail);
    }
}

#[test]
fn level_zero_words_reproduce_except_known_rows() {
    for c in verify(&FixtureSet::reference())
        .iter()
        .filter(|c| c.group == Group::TableI)
    {
        println!("{} pass={} {}", c.name, c.pass, c.detail);
    }
    assert_eq!(
        failing(Group::TableI),
        ["table I k=3 H inv", "table I k=7 H inv"]
    );
}

#[test]
fn cnot_words_reproduce_except_known_row() {
    for c in verify(&FixtureSet::reference())
        .iter()
        .filter(|c| c.group == Group::TableII)
    {
        println!("{} pass={} {}", c.name, c.pass, c.detail);
    }
    assert_eq!(failing(Group::TableII), ["table II k=5 CNOT fwd"]);
}
