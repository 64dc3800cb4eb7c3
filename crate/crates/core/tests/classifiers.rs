use std::collections::HashSet;

use grpart::classify::{
    check_left_large, check_left_small, check_left_thick, check_n_thin, check_scattered, check_sparse,
    combinatorial_derivation, find_large_witness, fp_products, fp_set, interior, thin_count, verify_pattern,
    IdealSpec, DEFAULT_NODE_BUDGET,
};
use grpart::subset::atoms;
use grpart::{Element, Group, Side, Status, SubsetView, Window, Witness};
use proptest::prelude::*;

fn ints(v: impl IntoIterator<Item = i64>) -> Vec<Element> {
    v.into_iter().map(Element::int).collect()
}

fn z_balls(n: i64) -> Vec<Vec<Element>> {
    (1..=n).map(|r| ints(-r..=r)).collect()
}

fn z() -> Group {
    Group::integers()
}

// largeness

#[test]
fn evens_large_with_zero_one() {
    let w = Window::interval(-50, 50, 1);
    assert!(check_left_large(&z(), &atoms::evens(), &ints([0, 1]), &w).is_holds());
}

#[test]
fn lambda_cell_large_in_f2() {
    let f2 = Group::free(2);
    let w = f2.enumerate_ball_with_margin(6, 1).unwrap();
    let f = vec![f2.identity(), f2.letter(0)];
    assert!(check_left_large(&f2, &atoms::lambda(0), &f, &w).is_holds());
}

#[test]
fn point_not_large() {
    let a = SubsetView::explicit("A", ints([0]));
    let v = check_left_large(&z(), &a, &ints([0]), &Window::interval(-5, 5, 0));
    assert_eq!(v.status, Status::Fails);
    match v.witness {
        Some(Witness::RadiusPoint { point, .. }) => assert_eq!(point, Element::int(1)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn multiples_of_three_need_three_translates() {
    let w = Window::interval(-300, 300, 10);
    let v = find_large_witness(&z(), &atoms::multiples(3), 4, &w, Side::Left);
    let Some(Witness::Set(f)) = v.witness else { panic!("{v:?}") };
    let residues: HashSet<i64> = f.iter().map(|x| x.as_int().unwrap().rem_euclid(3)).collect();
    assert_eq!((f.len(), residues.len()), (3, 3));
}

#[test]
fn whole_group_needs_one_translate() {
    let w = Window::interval(-20, 20, 2);
    let v = find_large_witness(&z(), &SubsetView::all(), 2, &w, Side::Left);
    assert!(v.is_holds());
    let Some(Witness::Set(f)) = v.witness else { panic!() };
    assert_eq!(f.len(), 1);
}

#[test]
fn squares_not_covered_by_two_translates() {
    let w = Window::interval(0, 10_000, 0);
    assert!(find_large_witness(&z(), &atoms::squares(), 3, &w, Side::Left).is_fails());
}

// interiors and thickness

#[test]
fn interior_examples() {
    let w = Window::interval(-40, 40, 3);
    assert!(interior(&z(), &atoms::evens(), &ints([1]), &w, Side::Left).is_empty());
    let all = interior(&z(), &SubsetView::all(), &ints([1, -2]), &w, Side::Left);
    assert_eq!(all.len(), w.core_len());
    let w = Window::interval(0, 10_000, 0);
    let runs = interior(&z(), &atoms::square_runs(), &ints([0, 1, 2]), &w, Side::Left);
    assert!(runs.contains(&Element::int(9)));
}

#[test]
fn square_runs_thick() {
    let w = Window::interval(0, 10_000, 0);
    assert!(check_left_thick(&z(), &atoms::square_runs(), &z_balls(10), &w).is_holds());
}

#[test]
fn evens_not_thick() {
    let w = Window::interval(-50, 50, 2);
    let v = check_left_thick(&z(), &atoms::evens(), &[ints([0, 1])], &w);
    assert_eq!(v.status, Status::Fails);
    assert_eq!(v.witness, Some(Witness::Radii(vec![ints([0, 1])])));
    assert!(check_left_thick(&z(), &SubsetView::all(), &z_balls(3), &w).is_holds());
}

/// Brute force: some `F ∋ 0` of size at most `b` from `pool` makes `F + A`
/// contain an interval `[x - r, x + r]` of the window for every `r ≤ rmax`.
fn brute_prethick(a: &SubsetView, pool: &[i64], b: usize, lo: i64, hi: i64, rmax: i64) -> bool {
    let covered = |f: &[i64], y: i64| f.iter().any(|t| a.contains(&Element::int(y - t)));
    let others: Vec<i64> = pool.iter().copied().filter(|&t| t != 0).collect();
    // index sets into `others` of size below `b`, each extended by 0
    let mut sets: Vec<Vec<usize>> = vec![vec![]];
    let mut k = 0;
    while k < sets.len() {
        let s = sets[k].clone();
        if s.len() + 1 < b {
            for j in s.last().map_or(0, |&l| l + 1)..others.len() {
                let mut s2 = s.clone();
                s2.push(j);
                sets.push(s2);
            }
        }
        k += 1;
    }
    let sets: Vec<Vec<i64>> =
        sets.iter().map(|s| std::iter::once(0).chain(s.iter().map(|&j| others[j])).collect()).collect();
    sets.iter().any(|f| {
        let mask: Vec<bool> = (lo..=hi).map(|y| covered(f, y)).collect();
        let longest = mask
            .iter()
            .scan(0i64, |run, &m| {
                *run = if m { *run + 1 } else { 0 };
                Some(*run)
            })
            .max()
            .unwrap_or(0);
        longest >= 2 * rmax + 1
    })
}

#[test]
fn squares_small_agrees_with_brute_force() {
    let w = Window::interval(0, 100_000, 0);
    let v = check_left_small(&z(), &atoms::squares(), &z_balls(5), 3, &w);
    assert!(v.is_holds(), "{v:?}");
    // the same question on a shorter window, answered by scanning intervals
    assert!(!brute_prethick(&atoms::squares(), &(-5..=5).collect::<Vec<_>>(), 3, 0, 3_000, 5));
}

#[test]
fn evens_not_small() {
    let w = Window::interval(-60, 60, 0);
    let v = check_left_small(&z(), &atoms::evens(), &z_balls(3), 2, &w);
    assert_eq!(v.status, Status::Fails);
    match v.witness {
        // one translate of each parity
        Some(Witness::RadiusPoint { radius, .. }) => {
            let parities: HashSet<i64> = radius.iter().map(|x| x.as_int().unwrap().rem_euclid(2)).collect();
            assert_eq!((radius.len(), parities.len()), (2, 2));
        }
        other => panic!("{other:?}"),
    }
    assert!(brute_prethick(&atoms::evens(), &(-3..=3).collect::<Vec<_>>(), 2, -60, 60, 3));
}

#[test]
fn finite_set_small() {
    let a = SubsetView::explicit("A", ints([0, 5]));
    let w = Window::interval(-60, 60, 0);
    assert!(check_left_small(&z(), &a, &z_balls(3), 3, &w).is_holds());
}

// thinness

fn powers_head() -> HashSet<Element> {
    ints(0..=32).into_iter().collect()
}

#[test]
fn powers_of_two_are_thin() {
    let w = Window::interval(0, 1 << 20, 8);
    let r = thin_count(&z(), &atoms::powers(2), &ints(-8..=8), &w, &powers_head(), Side::Left);
    assert_eq!(r.max, 1);
    // 2^6 ..= 2^19 lie in the core outside the head
    assert_eq!(r.scanned, 14);
}

#[test]
fn paired_powers_are_two_thin() {
    let a = atoms::powers(2).union(&atoms::powers(2).translate(&z(), &Element::int(1), Side::Left));
    let w = Window::interval(0, 1 << 20, 8);
    let r = thin_count(&z(), &a, &ints(-8..=8), &w, &powers_head(), Side::Left);
    assert_eq!(r.max, 2);
}

#[test]
fn evens_not_two_thin() {
    let w = Window::interval(-100, 100, 4);
    let v = check_n_thin(&z(), &atoms::evens(), &[ints([0, 2, 4])], 2, &w, &HashSet::new());
    assert!(v.is_fails());
    let Some(Witness::Count { n, .. }) = v.witness else { panic!() };
    assert_eq!(n, 3);
}

// sparseness

#[test]
fn sparse_examples() {
    let w = Window::interval(-1000, 1000, 0);
    let sample = ints(0..=10);
    let t = IdealSpec::FiniteSets.threshold(&w);
    assert!(check_sparse(&z(), &atoms::naturals(), &sample, 3, t, &w).is_fails());
    let v = check_sparse(&z(), &atoms::powers(2), &sample, 2, t, &w);
    assert!(v.is_holds());
    let Some(Witness::Set(f)) = v.witness else { panic!() };
    assert!(f.len() <= 2);
    assert!(check_sparse(&z(), &SubsetView::empty(), &sample, 1, t, &w).is_holds());
}

// derivation

/// `{g ∈ W : |(g + A) ∩ A ∩ W| > t}` by direct counting.
fn brute_derivation(a: &SubsetView, lo: i64, hi: i64, t: usize) -> Vec<i64> {
    let members: Vec<i64> = (lo..=hi).filter(|&x| a.contains(&Element::int(x))).collect();
    (lo..=hi)
        .filter(|&g| members.iter().filter(|&&m| a.contains(&Element::int(m - g))).count() > t)
        .collect()
}

fn sorted(v: Vec<Element>) -> Vec<i64> {
    let mut out: Vec<i64> = v.iter().map(|x| x.as_int().unwrap()).collect();
    out.sort_unstable();
    out
}

#[test]
fn derivation_of_evens() {
    let w = Window::interval(-1000, 1000, 0);
    let d = combinatorial_derivation(&z(), &atoms::evens(), IdealSpec::WindowThreshold(10), &w);
    assert_eq!(sorted(d), (-1000..=1000).filter(|x| x % 2 == 0).collect::<Vec<_>>());
}

#[test]
fn derivation_of_small_finite_set_is_empty() {
    let w = Window::interval(-100, 100, 0);
    let a = SubsetView::explicit("A", ints([1, 4, 9]));
    assert!(combinatorial_derivation(&z(), &a, IdealSpec::WindowThreshold(3), &w).is_empty());
}

#[test]
fn derivation_of_multiples_of_three() {
    let w = Window::interval(-300, 300, 0);
    let d = combinatorial_derivation(&z(), &atoms::multiples(3), IdealSpec::FiniteSets, &w);
    let t = IdealSpec::FiniteSets.threshold(&w);
    let expected = brute_derivation(&atoms::multiples(3), -300, 300, t);
    assert_eq!(sorted(d), expected);
    assert!(expected.iter().all(|x| x % 3 == 0) && expected.len() > 150);
}

// FP sets and scattered sets

#[test]
fn fp_products_examples() {
    let p = fp_products(&z(), &ints([1, 2, 4]), 3).unwrap();
    assert_eq!(p, ints([1, 2, 4, 3, 5, 6, 7]));
    assert_eq!(fp_products(&z(), &ints([5, 9]), 1).unwrap(), ints([5]));
    let f2 = Group::free(2);
    let (a, b) = (f2.letter(0), f2.letter(1));
    let p = fp_products(&f2, &[a.clone(), b.clone()], 2).unwrap();
    assert_eq!(p, vec![a.clone(), b.clone(), f2.mul(&a, &b)]);
}

#[test]
fn naturals_contain_a_pattern() {
    let w = Window::interval(0, 200, 0);
    let v = check_scattered(&z(), &atoms::naturals(), 4, &w, DEFAULT_NODE_BUDGET).unwrap();
    assert!(v.is_fails());
    let Some(Witness::Pattern { gs, bs }) = v.witness else { panic!() };
    assert_eq!(gs.len(), 4);
    assert!(verify_pattern(&z(), &atoms::naturals(), &gs, &bs));
}

#[test]
fn powers_of_two_scattered_at_depth_three() {
    let w = Window::interval(0, 1 << 14, 0);
    assert!(check_scattered(&z(), &atoms::powers(2), 3, &w, DEFAULT_NODE_BUDGET).unwrap().is_holds());
    assert!(check_scattered(&z(), &SubsetView::empty(), 3, &w, DEFAULT_NODE_BUDGET).unwrap().is_holds());
}

// invariants

fn bits_set(bits: &[bool], lo: i64) -> SubsetView {
    let elems = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| Element::int(lo + i as i64)).collect();
    SubsetView::explicit("A", elems)
}

/// Points at least `gap` apart, starting near `start`.
fn spread(start: i64, gaps: &[i64]) -> Vec<i64> {
    let mut x = start;
    gaps.iter()
        .map(|g| {
            x += g;
            x
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn thick_sets_have_non_large_complements(bits in proptest::collection::vec(prop::bool::weighted(0.8), 121), r in 1i64..4) {
        let a = bits_set(&bits, -60);
        let w = Window::interval(-60, 60, r as u32);
        let radii = z_balls(r);
        if check_left_thick(&z(), &a, &radii, &w).is_holds() {
            let rest = a.complement();
            for f in &radii {
                prop_assert!(check_left_large(&z(), &rest, f, &w).is_fails());
            }
        }
    }

    #[test]
    fn unions_of_thin_sets(m in 1usize..4, gaps in proptest::collection::vec(proptest::collection::vec(20i64..60, 2..12), 3)) {
        let f = ints(-4..=4);
        let w = Window::interval(-50, 900, 4);
        let head = HashSet::new();
        let mut union = SubsetView::empty();
        for (i, g) in gaps.iter().take(m).enumerate() {
            let part = SubsetView::explicit("T", ints(spread(i as i64 * 3, g)));
            prop_assert_eq!(thin_count(&z(), &part, &f, &w, &head, Side::Left).max.min(1), part.in_core(&w).len().min(1));
            union = union.union(&part);
        }
        prop_assert!(thin_count(&z(), &union, &f, &w, &head, Side::Left).max <= m);
    }

    #[test]
    fn finite_sets_have_empty_derivation(pts in proptest::collection::hash_set(-500i64..500, 0..20)) {
        let w = Window::interval(-500, 500, 0);
        let a = SubsetView::explicit("A", ints(pts));
        prop_assert!(combinatorial_derivation(&z(), &a, IdealSpec::FiniteSets, &w).is_empty());
    }

    #[test]
    fn derivation_of_symmetric_sets_is_symmetric(half in proptest::collection::vec(prop::bool::weighted(0.6), 1..80), t in 0usize..30) {
        let mut pts = Vec::new();
        for (i, &b) in half.iter().enumerate() {
            if b {
                pts.push(i as i64);
                pts.push(-(i as i64));
            }
        }
        let w = Window::interval(-100, 100, 0);
        let a = SubsetView::explicit("A", ints(pts));
        let d: HashSet<i64> = sorted(combinatorial_derivation(&z(), &a, IdealSpec::WindowThreshold(t), &w)).into_iter().collect();
        for x in &d {
            prop_assert!(d.contains(&-x));
        }
    }

    #[test]
    fn fp_sets_contain_their_own_patterns(gs in proptest::collection::hash_set(1i64..1000, 4), d in 1usize..5) {
        let gs = ints(gs);
        let a = fp_set(&z(), &gs, 4).unwrap();
        let w = Window::interval(0, 4000, 0);
        let v = check_scattered(&z(), &a, d, &w, DEFAULT_NODE_BUDGET).unwrap();
        prop_assert!(v.is_fails());
    }
}
