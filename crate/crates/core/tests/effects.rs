use proptest::prelude::*;

use triangles_core::effect::mv::{join, meet, minus, orth, ovee, plus};
use triangles_core::effect::{unit_grid, Rat};

fn grid_value() -> impl Strategy<Value = Rat> {
    let grid = unit_grid(12);
    (0..grid.len()).prop_map(move |i| grid[i].clone())
}

proptest! {
    #[test]
    fn partial_sum_is_commutative_and_associative(a in grid_value(), b in grid_value(), c in grid_value()) {
        prop_assert_eq!(ovee(&a, &b), ovee(&b, &a));
        let left = ovee(&a, &b).and_then(|ab| ovee(&ab, &c));
        let right = ovee(&b, &c).and_then(|bc| ovee(&a, &bc));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn orthosupplement_is_the_unique_complement(a in grid_value(), b in grid_value()) {
        prop_assert_eq!(orth(&orth(&a)), a.clone());
        let one = Rat::from_integer(1.into());
        let sums_to_one = ovee(&a, &b) == Some(one);
        prop_assert_eq!(sums_to_one, b == orth(&a));
    }

    #[test]
    fn lattice_operations_match_the_order(a in grid_value(), b in grid_value()) {
        prop_assert_eq!(join(&a, &b), a.clone().max(b.clone()));
        prop_assert_eq!(meet(&a, &b), a.clone().min(b.clone()));
        prop_assert_eq!(plus(&minus(&a, &b), &b), join(&a, &b));
    }
}
