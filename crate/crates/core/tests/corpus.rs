use relhyp_core::fixtures::corpus;
use relhyp_core::visibility::{visibility_all_by_enumeration, visibility_set};

#[test]
fn visibility_formula_matches_enumeration_on_corpus() {
    for (name, g) in corpus() {
        let listed = visibility_all_by_enumeration(&g, 100_000)
            .unwrap_or_else(|| panic!("{name}: geodesic cap exceeded"));
        for (k, &e) in g.edges().iter().enumerate() {
            assert_eq!(visibility_set(&g, e).unwrap(), listed[k], "{name} edge {e:?}");
        }
    }
}
