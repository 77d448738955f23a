use proptest::prelude::*;
use qwalk::io::{read_count_vector_csv, read_matrix, write_count_vector_csv, write_matrix};
use qwalk::qmeasure::refine;
use qwalk::{
    decoherence_matrix, grade2_check, mu_fast, mu_pairsum, y_vector, CylinderEvent, Dyadic, Event,
};

fn event(level: u32, mask: u64) -> Event {
    Event::from_indices(level, (0..1u64 << level).filter(|j| mask >> j & 1 == 1)).unwrap()
}

proptest! {
    #[test]
    fn routes_agree(level in 1u32..=6, mask: u64) {
        let a = event(level, mask);
        let fast = mu_fast(&a);
        prop_assert!(!fast.is_negative());
        prop_assert_eq!(fast, mu_pairsum(&a).unwrap());
    }

    #[test]
    fn hex_mask_round_trip(level in 1u32..=8, mask: u64) {
        let a = event(level.min(6), mask);
        let back = Event::from_hex_mask(a.level(), &a.to_hex_mask()).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn grade2_on_partitions(level in 1u32..=6, labels: Vec<u8>) {
        // assign each path to A, B, C or none
        let size = 1usize << level;
        let label = |j: usize| labels.get(j).copied().unwrap_or(0) % 4;
        let part = |c: u8| {
            Event::from_indices(level, (0..size).filter(|&j| label(j) == c).map(|j| j as u64)).unwrap()
        };
        let report = grade2_check(&part(1), &part(2), &part(3)).unwrap();
        prop_assert!(report.holds);
        prop_assert_eq!(report.lhs, report.rhs);
    }

    #[test]
    fn refinement_keeps_measure(level in 1u32..=6, mask: u64, extra in 0u32..=4) {
        let c = CylinderEvent::new(event(level, mask));
        let fine = refine(&c, level + extra).unwrap();
        prop_assert_eq!(fine.base().len(), c.base().len() << extra);
        prop_assert_eq!(mu_fast(fine.base()), mu_fast(c.base()));
    }

    #[test]
    fn dyadic_text_round_trip(num: i64, exp in 0u32..80) {
        let d = Dyadic::new(num, exp);
        prop_assert_eq!(d.to_string().parse::<Dyadic>().unwrap(), d);
    }
}

#[test]
fn matrix_and_vector_files_round_trip() {
    for n in 1..=8 {
        let m = decoherence_matrix(n).unwrap();
        assert_eq!(read_matrix(&write_matrix(&m)).unwrap(), m);
        let y = y_vector(n).unwrap();
        assert_eq!(
            read_count_vector_csv(&write_count_vector_csv(&y)).unwrap(),
            y
        );
    }
}

#[test]
fn whole_space_sums_to_one() {
    for n in 1..=12 {
        let m = decoherence_matrix(n).unwrap();
        assert_eq!(m.entry_sum(), Dyadic::one());
        assert_eq!(mu_fast(&Event::full(n).unwrap()), Dyadic::one());
    }
}
