use bridge_core::wellmixed::{adjacent_label_pairs, all_families, is_totally_ordered};
use bridge_core::{
    build_bridge_diagram, check_all, check_pair, separating_family, Hemisphere, PlatWord,
};
use proptest::prelude::*;

fn diagram_word(max_n: usize, max_len: usize) -> impl Strategy<Value = PlatWord> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((1..2 * n as i64, any::<bool>()), 0..=max_len).prop_map(
            move |letters| {
                let word: Vec<i64> = letters
                    .into_iter()
                    .map(|(j, pos)| if pos { j } else { -j })
                    .collect();
                PlatWord::from_signed(n, &word).unwrap()
            },
        )
    })
}

fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn families_are_symmetric_and_ordered(w in diagram_word(5, 12)) {
        let d = build_bridge_diagram(&w).unwrap();
        let n = d.n();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                for h in Hemisphere::BOTH {
                    let fam = separating_family(&d, i, j, h).unwrap();
                    let mut back = separating_family(&d, j, i, h).unwrap();
                    back.members.reverse();
                    prop_assert_eq!(&fam.members, &back.members);
                    prop_assert!(is_totally_ordered(&d, &fam));
                    for (x, a) in fam.members.iter().enumerate() {
                        for b in &fam.members[x + 1..] {
                            prop_assert!(!interleave(a.chord, b.chord));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn overall_is_the_conjunction(w in diagram_word(4, 12)) {
        let d = build_bridge_diagram(&w).unwrap();
        let report = check_all(&d);
        let mut all = true;
        for r in &report.results {
            let (ok, missing) = check_pair(&d, r.i, r.j, r.hemisphere).unwrap();
            prop_assert_eq!(ok, r.satisfied);
            prop_assert_eq!(&missing, &r.missing);
            all &= ok;
        }
        prop_assert_eq!(all, report.overall);
        prop_assert_eq!(report.results.len(), all_families(&d).len());
    }

    #[test]
    fn dropping_an_end_member_never_adds_pairs(labels in prop::collection::vec(1usize..5, 1..12), front in any::<bool>()) {
        let full = adjacent_label_pairs(&labels);
        let rest = if front { &labels[1..] } else { &labels[..labels.len() - 1] };
        prop_assert!(adjacent_label_pairs(rest).is_subset(&full));
    }
}

#[test]
fn dropping_an_inner_member_can_add_a_pair() {
    let full = adjacent_label_pairs(&[1, 2, 3]);
    let rest = adjacent_label_pairs(&[1, 3]);
    assert!(!rest.is_subset(&full));
}
