use ribbonheap::cochain::phi_vec;
use ribbonheap::coloring::count_colorings;
use ribbonheap::diagram::builders::*;
use ribbonheap::invariant::{cocycle_invariant, Decoration};
use ribbonheap::moves::*;
use ribbonheap::*;

fn samples() -> Vec<(&'static str, RibbonDiagram)> {
    vec![
        ("annulus", annulus()),
        ("looped2", looped_band(2)),
        ("t1_1", torus_t1(1)),
        ("hopf", hopf_annuli()),
        ("rings3", three_annuli_chain()),
        ("bands11", trivial_band_closure(1, 1).unwrap()),
        ("pd", punctured_disk(&[1, 2], 1).unwrap()),
    ]
}

fn check_same(name: &str, before: &RibbonDiagram, after: &RibbonDiagram, site: &MoveSite) {
    let s0 = before.validate().unwrap();
    let s1 = after
        .validate()
        .unwrap_or_else(|e| panic!("{name}: {site:?} broke the diagram: {e}"));
    assert_eq!(s0, s1, "{name}: {site:?} changed the summary");
    for chi in after.face_euler_characteristics().unwrap() {
        assert_eq!(chi, 2, "{name}: {site:?} is not planar");
    }
    let phi = phi_vec(3, &[0, 1, 2]).unwrap();
    let x = phi.heap();
    assert_eq!(
        count_colorings(before, x).unwrap(),
        count_colorings(after, x).unwrap(),
        "{name}: {site:?} changed the coloring count"
    );
    let dec = Decoration::uniform(&phi, s0.nu()).unwrap();
    assert_eq!(
        cocycle_invariant(before, &dec).unwrap(),
        cocycle_invariant(after, &dec).unwrap(),
        "{name}: {site:?} changed the invariant"
    );
}

#[test]
fn every_site_preserves_the_surface() {
    for (name, d) in samples() {
        for kind in ALL_KINDS {
            for site in find_sites(&d, kind).unwrap().into_iter().take(40) {
                let after = apply(&d, &site).unwrap();
                check_same(name, &d, &after, &site);
            }
        }
    }
}

#[test]
fn backward_sites_appear_after_forward_moves() {
    for (name, d) in samples() {
        for kind in [MoveKind::Rii, MoveKind::Cl, MoveKind::Yi, MoveKind::Iy] {
            for site in find_sites(&d, kind).unwrap().into_iter().take(12) {
                if site.direction != Direction::Forward {
                    continue;
                }
                let after = apply(&d, &site).unwrap();
                let back: Vec<_> = find_sites(&after, kind)
                    .unwrap()
                    .into_iter()
                    .filter(|s| s.direction == Direction::Backward)
                    .collect();
                assert!(!back.is_empty(), "{name}: no way back from {site:?}");
                for s in back {
                    let again = apply(&after, &s).unwrap();
                    check_same(name, &after, &again, &s);
                }
            }
        }
    }
}

#[test]
fn fuzz_runs_are_reproducible_and_invariant() {
    for (name, d) in samples() {
        let cfg = FuzzConfig::new(7, 60);
        let (a, ta) = fuzz(&d, &cfg).unwrap();
        let (b, tb) = fuzz(&d, &cfg).unwrap();
        assert_eq!(ta, tb);
        assert_eq!(a, b);
        let last = ta.last().map(|t| t.site.clone()).unwrap();
        check_same(name, &d, &a, &last);
    }
}
