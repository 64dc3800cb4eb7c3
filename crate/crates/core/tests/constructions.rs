use std::collections::HashSet;

use grpart::classify::{check_left_large, check_left_thick, check_n_thin, check_small};
use grpart::constructions::{
    free_3large_cell, free_4large_report, greedy_blocks, m_thin_partition, p_small_witness, thick_partition,
    MThinOutcome, PSmallMode, Pairing,
};
use grpart::filtration::{d_n_cells, Filtration, Scheme};
use grpart::graph::non_thick_partition;
use grpart::partition::{Label, WindowSpec};
use grpart::verdict::Witness;
use grpart::{Element, Side, Group, Status, SubsetView, Window};

fn ints(v: impl IntoIterator<Item = i64>) -> Vec<Element> {
    v.into_iter().map(Element::int).collect()
}

fn z_radii(t: i64) -> Vec<Vec<Element>> {
    (1..=t).map(|r| ints(-r..=r)).collect()
}

#[test]
fn free_3large_identity_on_balls() {
    let g = Group::free(2);
    for r in 0..=8 {
        let ball = g.enumerate_ball(r).unwrap();
        for a in 0..2 {
            let letter = g.letter(a);
            let inv = g.inverse(&letter);
            for x in ball.elements() {
                // x ∈ {e, a}·P_a
                let direct = free_3large_cell(x) == Label::Letter(a);
                let shifted = free_3large_cell(&g.mul(&inv, x)) == Label::Letter(a);
                assert!(direct || shifted, "r={r} a={a} x={}", g.format_element(x));
            }
        }
    }
}

#[test]
fn free_4large_left_condition_on_ball_four() {
    let g = Group::free(4);
    let pairing = Pairing::consecutive(4).unwrap();
    let ball = g.enumerate_ball(4).unwrap();
    for alpha in 0..2 {
        let (x, y) = pairing.pairs[alpha];
        let f = [g.identity(), g.letter(x), g.letter(y)];
        for h in ball.elements() {
            assert!(f.iter().any(|t| pairing.in_l(&g.mul(t, h), alpha)), "alpha={alpha} g={}", g.format_element(h));
        }
    }
}

#[test]
fn free_4large_two_sided_misses_only_identity() {
    let g = Group::free(4);
    let pairing = Pairing::consecutive(4).unwrap();
    let w = WindowSpec::Ball { radius: 4, margin: 1 }.build(&g).unwrap();
    for alpha in 0..2 {
        let v = free_4large_report(&g, &pairing, alpha, &w);
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.witness, Some(Witness::Set(vec![g.identity()])));
    }
}

#[test]
fn thick_two_cells_on_long_interval() {
    let z = Group::integers();
    let spec = WindowSpec::Interval { lo: 0, hi: 100_000, margin: 0 };
    let w = spec.build(&z).unwrap();
    let p = thick_partition(&z, 2, &spec, 2).unwrap();
    p.check_total(&w).unwrap();
    // blocks are intervals x + [-2h, 2h] and never overlap
    let (blocks, _) = greedy_blocks(&z, 2, &w).unwrap();
    for pair in blocks.windows(2) {
        let (a, b) = (pair[0].centre.as_int().unwrap(), pair[1].centre.as_int().unwrap());
        assert!(a + 2 * (pair[0].radius as i64) < b - 2 * (pair[1].radius as i64));
    }
    // an independent re-check of both cells up to radius 40
    let radii = z_radii(40);
    for c in &p.cells {
        let a = c.subset(&z).unwrap();
        assert_eq!(check_left_thick(&z, &a, &radii, &w).status, Status::Holds, "{:?}", c.label);
    }
}

#[test]
fn thick_cells_on_f2_ball() {
    let g = Group::free(2);
    let spec = WindowSpec::Ball { radius: 9, margin: 0 };
    let p = thick_partition(&g, 2, &spec, 2).unwrap();
    assert_eq!(p.status(), Status::Holds);
    let w = spec.build(&g).unwrap();
    let radii: Vec<Vec<Element>> = (1..=2).map(|r| g.enumerate_ball(r).unwrap().elements().to_vec()).collect();
    for c in &p.cells {
        let a = c.subset(&g).unwrap();
        assert_eq!(check_left_thick(&g, &a, &radii, &w).status, Status::Holds);
    }
}

#[test]
fn m_thin_cells_are_thin() {
    let z = Group::integers();
    let a = grpart::parse_set(&z, "powers(2) union translate(1) powers(2)").unwrap();
    let spec = WindowSpec::Interval { lo: -2000, hi: 2000, margin: 500 };
    let w = spec.build(&z).unwrap();
    // 2, 3, 4 crowd one radius-1 ball, so small points are exempt
    let head = ints(-8..=8);
    let family = vec![ints(-1..=1)];
    let MThinOutcome::Partition(p) = m_thin_partition(&z, &a, 2, &family, &spec, &head).unwrap() else {
        panic!("expected a partition");
    };
    let head: HashSet<Element> = head.into_iter().collect();
    assert_eq!(p.cells.len(), 3);
    assert_eq!(p.cells[2].label, Label::Reserved);
    for c in &p.cells[..2] {
        let cell = c.subset(&z).unwrap();
        let v = check_n_thin(&z, &cell, &family, 1, &w, &head);
        assert_eq!(v.status, Status::Holds, "{v:?} {:?}", c.elements);
        // each pair {2^k, 2^k + 1} is split
        for x in &c.elements {
            let x = x.as_int().unwrap();
            assert!(x <= 8 || !c.elements.contains(&Element::int(x + 1)));
        }
    }
}

#[test]
fn p_small_witnesses() {
    let z = Group::integers();
    let w = Window::interval(-300, 300, 100);
    let point = SubsetView::explicit("A", ints([0]));
    assert_eq!(p_small_witness(&z, &point, 5, PSmallMode::Disjoint, &w).len(), 5);
    let threes = grpart::parse_set(&z, "multiples(3)").unwrap();
    let found = p_small_witness(&z, &threes, 4, PSmallMode::Disjoint, &w);
    assert_eq!(found.len(), 3);
    let residues: HashSet<i64> = found.iter().map(|x| x.as_int().unwrap().rem_euclid(3)).collect();
    assert_eq!(residues.len(), 3);
    let powers = grpart::parse_set(&z, "powers(2)").unwrap();
    let almost = p_small_witness(&z, &powers, 4, PSmallMode::Almost { threshold: 2 }, &w);
    assert_eq!(almost.len(), 4);
}

#[test]
fn non_thick_partition_on_f2() {
    let g = Group::free(2);
    let spec = WindowSpec::Ball { radius: 6, margin: 0 };
    let p = non_thick_partition(&g, &g.letter(0), &spec).unwrap();
    assert!(p.cells.len() <= 3);
    assert_eq!(p.status(), Status::Holds);
    p.check_total(&spec.build(&g).unwrap()).unwrap();
}

#[test]
fn d_n_cells_are_small() {
    let g = Group::countable_sum(2).unwrap();
    let f = Filtration::new(&g, Scheme::StandardDirectSum).unwrap();
    let w = Window::first_n(&g, 256, 256).unwrap();
    let radii: Vec<Vec<Element>> = (1..=4).map(|r| g.radius_set(r).unwrap()).collect();
    let cells = d_n_cells(&f, &w);
    assert_eq!(cells.len(), 9);
    for c in &cells {
        let a = c.subset(&g).unwrap();
        let pool: Vec<Element> = (0..64).map(|i| g.nth_element(i).unwrap()).collect();
        let v = check_small(&g, &a, &radii, 3, Some(&pool), &w, Side::Left);
        assert_ne!(v.status, Status::Fails, "{:?}", c.label);
    }
}

#[test]
fn aleph1_cells_cover_with_truncated_radius() {
    let k = Group::countable_sum(2).unwrap();
    let g = Group::product(k.clone(), k);
    let f = Filtration::new(&g, Scheme::ProductKH).unwrap();
    let points: Vec<Element> = (0..2000).map(|i| g.nth_element(i).unwrap()).collect();
    for alpha in 1..=4 {
        let radius = f.aleph1_radius(alpha, 32).unwrap();
        assert_eq!(radius.len(), 64);
        for x in &points {
            let covered = radius.iter().any(|t| f.aleph1_large_cell(&g.mul(&g.inverse(t), x)).unwrap() == Some(alpha));
            assert!(covered, "alpha={alpha} x={}", g.format_element(x));
        }
    }
}

#[test]
fn lambda_cells_are_left_large() {
    let g = Group::free(2);
    let w = WindowSpec::Ball { radius: 6, margin: 1 }.build(&g).unwrap();
    for a in 0..2 {
        let cell = SubsetView::explicit(
            "P",
            w.elements().iter().filter(|x| free_3large_cell(x) == Label::Letter(a)).cloned().collect(),
        );
        let f = vec![g.identity(), g.letter(a)];
        assert_eq!(check_left_large(&g, &cell, &f, &w).status, Status::Holds);
    }
}
