use ribbonheap::coloring::count_colorings;
use ribbonheap::diagram::realize_group;
use ribbonheap::presentation::{abelianization, fundamental_presentation};
use ribbonheap::{group_heap, Error, FiniteGroup, GroupPresentation};

/// Homomorphisms from the presented group to `g`, by trying every
/// assignment of the generators.
fn homs(p: &GroupPresentation, g: &FiniteGroup) -> u64 {
    let n = p.generator_count();
    let q = g.order();
    let mut count = 0;
    let mut idx = vec![0usize; n];
    loop {
        let ok = p.relators.iter().all(|r| {
            let mut acc = g.identity();
            for &l in r {
                let x = idx[l.unsigned_abs() as usize - 1];
                acc = g.mul(acc, if l > 0 { x } else { g.inv(x) });
            }
            acc == g.identity()
        });
        count += ok as u64;
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < q {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
    }
}

const CASES: &[&str] = &[
    "gens: a\nrel: a a a",
    "gens: a b\nrel: a b",
    "gens: a b\nrel: a b A B",
    "gens: a b\nrel: a b a B A B",
    "gens: a b c\nrel: a b a c a",
    "gens: a b\nrel: a b\nrel: a b\nrel: a b",
    "gens: a b\nrel: a a\nrel: b b b\nrel: a b a b",
    "gens: a b c\nrel: a b c A B C\nrel: c a C b b",
    "gens: a b c\nrel: a b",
];

#[test]
fn realized_surfaces_are_connected_and_planar() {
    for text in CASES {
        let p = GroupPresentation::parse(text).unwrap();
        let r = realize_group(&p).unwrap();
        let s = r.diagram.validate().unwrap();
        assert_eq!(s.nu(), 1, "{text:?}");
        let fe = r.diagram.face_euler_characteristics().unwrap();
        assert!(fe.iter().all(|&c| c == 2), "{text:?}: {fe:?}");
        assert_eq!(r.free_factors, p.generator_count() + p.relators.len() + 1);
    }
}

#[test]
fn abelianization_is_free_part_plus_group() {
    for text in CASES {
        let p = GroupPresentation::parse(text).unwrap();
        let r = realize_group(&p).unwrap();
        let mut want = abelianization(&p);
        want.free_rank += r.free_factors;
        let got = abelianization(&fundamental_presentation(&r.diagram).unwrap());
        assert_eq!(got, want, "{text:?}");
    }
}

#[test]
fn coloring_counts_match_homomorphism_counts() {
    let s3 = FiniteGroup::dihedral(3).unwrap();
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let cases = [
        (&s3, "gens: a\nrel: a a a"),
        (&s3, "gens: a b\nrel: a b"),
        (&s3, "gens: a\nrel: a a"),
        (&s3, "gens: a b\nrel: a b a B A B"),
        (&z3, "gens: a b\nrel: a b A B"),
        (&z2, "gens: a b\nrel: a b\nrel: a b\nrel: a b"),
        (&z2, "gens: a b c\nrel: a b a c a"),
    ];
    for (g, text) in cases {
        let p = GroupPresentation::parse(text).unwrap();
        let r = realize_group(&p).unwrap();
        let got = count_colorings(&r.diagram, &group_heap(g)).unwrap();
        let want = (g.order() as u64).pow(r.free_factors as u32) * homs(&p, g);
        assert_eq!(got, want, "{text:?} over a group of order {}", g.order());
    }
}

#[test]
fn empty_presentation_is_rejected() {
    let p = GroupPresentation::parse("gens: a").unwrap();
    assert!(matches!(realize_group(&p), Err(Error::EmptyPresentation)));
}
