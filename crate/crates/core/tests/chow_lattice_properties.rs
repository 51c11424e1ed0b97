mod common;

use std::collections::BTreeSet;

use common::naive_chow::NaiveRing;
use common::rng;
use fanocheck::chow::{DivClass, IntersectionRing, ProductBase, SplitBundleSpec};
use fanocheck::gf::SmallField;
use fanocheck::lattice::{
    enumerate_classes, langer_neg2_classes, pgl3_compose, pgl3_elements, pgl_orbit_canonical, plane_points,
    LatticeClass, Matrix3, PicLattice, PointConfig,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_setup(rng: &mut ChaCha8Rng) -> (IntersectionRing, NaiveRing) {
    loop {
        let k = rng.gen_range(1..=3);
        let dims: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=2)).collect();
        let base_dim: usize = dims.iter().sum();
        if base_dim > 4 {
            continue;
        }
        let r = rng.gen_range(0..=(4 - base_dim + 1).min(3));
        let base = ProductBase::new(dims.clone()).unwrap();
        if r <= 1 {
            return (IntersectionRing::product(base), NaiveRing { dims, twists: vec![vec![0; k]] });
        }
        let twists: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let spec = SplitBundleSpec::new(&base, twists.clone()).unwrap();
        return (IntersectionRing::bundle(base, spec).unwrap(), NaiveRing { dims, twists });
    }
}

fn random_class(rng: &mut ChaCha8Rng, ring: &IntersectionRing) -> DivClass {
    let h = (0..ring.base().factors()).map(|_| rng.gen_range(-3..=3)).collect();
    if ring.has_xi() {
        DivClass::with_xi(h, rng.gen_range(-3..=3))
    } else {
        DivClass::base(h)
    }
}

#[test]
fn intersections_match_naive_quotient() {
    let mut rng = rng(31);
    for _ in 0..150 {
        let (ring, naive) = random_setup(&mut rng);
        let classes: Vec<DivClass> = (0..ring.dim()).map(|_| random_class(&mut rng, &ring)).collect();
        assert_eq!(
            ring.intersect(&classes).unwrap(),
            naive.intersect(&classes),
            "dims {:?}, twists {:?}, classes {classes:?}",
            naive.dims,
            naive.twists
        );
    }
}

#[test]
fn intersection_is_symmetric_and_multilinear() {
    let mut rng = rng(32);
    for _ in 0..120 {
        let (ring, _) = random_setup(&mut rng);
        let mut classes: Vec<DivClass> = (0..ring.dim()).map(|_| random_class(&mut rng, &ring)).collect();
        let value = ring.intersect(&classes).unwrap();
        let mut shuffled = classes.clone();
        shuffled.shuffle(&mut rng);
        assert_eq!(ring.intersect(&shuffled).unwrap(), value);

        let extra = random_class(&mut rng, &ring);
        let scale = rng.gen_range(-3..=3);
        let mut other = classes.clone();
        other[0] = extra.clone();
        let b = ring.intersect(&other).unwrap();
        classes[0] = classes[0].checked_add(&extra.checked_scale(scale).unwrap()).unwrap();
        assert_eq!(ring.intersect(&classes).unwrap(), value + scale as i128 * b);
    }
}

#[test]
fn projective_space_degrees() {
    for n in 1..=5usize {
        let ring = IntersectionRing::product(ProductBase::new(vec![n]).unwrap());
        for d in 1..=4i64 {
            // a degree-d hypersurface meets n - 1 hyperplanes in d points
            let mut classes = vec![DivClass::base(vec![1]); n - 1];
            classes.push(DivClass::base(vec![d]));
            assert_eq!(ring.intersect(&classes).unwrap(), d as i128);
        }
    }
}

fn lattice_brute_force(r: usize, self_int: i64, k_deg: i64, d_max: i64) -> BTreeSet<LatticeClass> {
    let mut out = BTreeSet::new();
    let span = 5i64; // m_i in -1..=3
    for d in 0..=d_max {
        for code in 0..span.pow(r as u32) {
            let mut c = code;
            let m: Vec<i64> = (0..r)
                .map(|_| {
                    let v = c % span - 1;
                    c /= span;
                    v
                })
                .collect();
            let cls = LatticeClass::new(d, m);
            if cls.self_intersection() == self_int && cls.k_degree() == k_deg {
                out.insert(cls);
            }
        }
    }
    out
}

#[test]
fn exceptional_classes_match_brute_force() {
    let expected = [1usize, 3, 6, 10, 16, 27, 56];
    for r in 1..=7 {
        let l = PicLattice::new(r).unwrap();
        let fast: BTreeSet<_> = enumerate_classes(&l, -1, -1, 3).into_iter().collect();
        assert_eq!(fast, lattice_brute_force(r, -1, -1, 3), "r = {r}");
        assert_eq!(fast.len(), expected[r - 1]);
    }
    // degree one del Pezzo surfaces need classes up to degree 6
    assert_eq!(enumerate_classes(&PicLattice::new(8).unwrap(), -1, -1, 6).len(), 240);
}

#[test]
fn reflections_in_langer_roots_permute_exceptional_classes() {
    let l = PicLattice::new(7).unwrap();
    let all: BTreeSet<_> = enumerate_classes(&l, -1, -1, 3).into_iter().collect();
    for root in langer_neg2_classes() {
        for c in &all {
            // s(c) = c + (c·root)·root for a (−2)-class
            let t = c.dot(&root).unwrap();
            let image = LatticeClass::new(c.d + t * root.d, c.m.iter().zip(&root.m).map(|(a, b)| a + t * b).collect());
            assert!(all.contains(&image), "{c} -> {image}");
        }
    }
}

#[test]
fn dot_product_is_symmetric() {
    let mut rng = rng(33);
    for _ in 0..200 {
        let r = rng.gen_range(1..=8);
        let mut rand_class =
            || LatticeClass::new(rng.gen_range(-5..=5), (0..r).map(|_| rng.gen_range(-5..=5)).collect());
        let (a, b) = (rand_class(), rand_class());
        assert_eq!(a.dot(&b).unwrap(), b.dot(&a).unwrap());
        assert_eq!(a.dot(&a).unwrap(), a.self_intersection());
    }
}

fn apply(field: &SmallField, g: &Matrix3, p: [u8; 3]) -> [u8; 3] {
    let mut out = [0u8; 3];
    for i in 0..3 {
        out[i] = (0..3).fold(0, |acc, j| field.add(acc, field.mul(g[i][j], p[j])));
    }
    out
}

#[test]
fn orbit_canonical_forms_are_invariant() {
    let mut rng = rng(34);
    for (q, rounds) in [(2u64, 100usize), (3, 20)] {
        let field = SmallField::new(q).unwrap();
        let group = pgl3_elements(q).unwrap();
        let points = plane_points(q).unwrap();
        for _ in 0..rounds {
            let size = rng.gen_range(1..=5);
            let chosen: Vec<[u8; 3]> = points.choose_multiple(&mut rng, size).copied().collect();
            let config = PointConfig::new(q, &chosen).unwrap();
            let info = pgl_orbit_canonical(&config).unwrap();
            assert_eq!(info.orbit_size * info.stabilizer_size, group.len() as u64);
            let g = group.choose(&mut rng).unwrap();
            let moved: Vec<[u8; 3]> = chosen.iter().map(|&p| apply(&field, g, p)).collect();
            let moved_info = pgl_orbit_canonical(&PointConfig::new(q, &moved).unwrap()).unwrap();
            assert_eq!(moved_info.canonical, info.canonical);
        }
    }
}

#[test]
fn pgl3_f2_is_closed_under_composition() {
    let group = pgl3_elements(2).unwrap();
    let set: BTreeSet<Matrix3> = group.iter().copied().collect();
    for a in &group {
        for b in &group {
            assert!(set.contains(&pgl3_compose(2, a, b).unwrap()));
        }
    }
}
