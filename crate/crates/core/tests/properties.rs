use std::collections::BTreeSet;

use proptest::prelude::*;

use discrete_jordan::contraction::{audit_sequence, contract_cycle, interior_cells};
use discrete_jordan::curves::{angle_wideness, classify, split_arcs, CurveClass, Path};
use discrete_jordan::gensurf::{generate, random_curve, random_polygon, GenSpec, Kind};
use discrete_jordan::io;
use discrete_jordan::jordan::{check_theorem2, components, insert_veblen_points, Verdict};
use discrete_jordan::planar::{embed, inside_outside, EmbedConfig, Location};
use discrete_jordan::surface::traverses;
use discrete_jordan::variation::{boundary_sum, is_gradually_varied, xor_sum};
use discrete_jordan::{Surface, VertexId};

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![
        Just(Kind::Octahedron),
        Just(Kind::Icosahedron),
        (1u32..5).prop_map(Kind::Disk),
        (3u32..20).prop_map(Kind::Fan),
        (3u32..7, 3u32..7).prop_map(|(m, n)| Kind::TorusGrid(m, n)),
        (3u32..7).prop_map(|k| Kind::Annulus(2 * k)),
    ]
}

fn euler(kind: Kind) -> i64 {
    match kind {
        Kind::Octahedron | Kind::Icosahedron => 2,
        Kind::Disk(_) | Kind::Fan(_) => 1,
        _ => 0,
    }
}

/// A random closed curve inside a hexagonal disk.
fn disk_curve() -> impl Strategy<Value = (Surface, Path)> {
    (2u32..6, any::<u64>()).prop_filter_map("no curve", |(r, seed)| {
        let g = generate(&GenSpec::new(Kind::Disk(r), seed)).ok()?;
        let c = random_curve(&g.surface, seed, 3, 40).ok()?;
        Some((g.surface, c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_surfaces_are_valid(kind in kind(), seed in any::<u64>()) {
        let g = generate(&GenSpec::new(kind, seed)).unwrap();
        prop_assert!(g.surface.validate().is_empty());
        prop_assert_eq!(g.surface.euler_characteristic(), euler(kind));
        let again = generate(&GenSpec::new(kind, seed)).unwrap();
        prop_assert_eq!(io::write_surface(&g.surface), io::write_surface(&again.surface));
        prop_assert_eq!(g.curves, again.curves);
    }

    #[test]
    fn neighborhood_is_the_union_of_incident_cells(kind in kind(), seed in any::<u64>()) {
        let s = generate(&GenSpec::new(kind, seed)).unwrap().surface;
        for p in s.vertices() {
            let mut direct: BTreeSet<VertexId> = BTreeSet::from([p]);
            for cell in s.cells().iter().filter(|c| c.contains(&p)) {
                direct.extend(cell.iter().copied());
            }
            prop_assert_eq!(s.neighborhood(p).unwrap().vertices, direct);
        }
    }

    #[test]
    fn link_cycles_cover_the_neighborhood(kind in kind(), seed in any::<u64>()) {
        let s = generate(&GenSpec::new(kind, seed)).unwrap().surface;
        for p in s.vertices().filter(|&p| !s.is_boundary_vertex(p)) {
            let link = s.link_cycle(p).unwrap();
            let set: BTreeSet<VertexId> = link.iter().copied().collect();
            prop_assert_eq!(set.len(), link.len());
            let mut nb = s.neighborhood(p).unwrap().vertices;
            nb.remove(&p);
            prop_assert_eq!(set, nb);
            let k = link.len();
            prop_assert!((0..k).all(|i| s.has_edge(link[i], link[(i + 1) % k])));
        }
    }

    #[test]
    fn orientation_opposes_across_interior_edges(kind in kind(), seed in any::<u64>()) {
        let s = generate(&GenSpec::new(kind, seed)).unwrap().surface.orient().unwrap();
        for e in s.edges() {
            let cells = s.edge_cells(e.0, e.1);
            if cells.len() == 2 {
                let fwd = cells.iter().filter(|&&c| traverses(s.cell(c), e.0, e.1)).count();
                prop_assert_eq!(fwd, 1);
            }
        }
    }

    #[test]
    fn arc_neighborhood_is_a_union((s, c) in disk_curve(), start in 0usize..40, len in 1usize..6) {
        let n = c.len();
        let arc: Vec<VertexId> = (0..len.min(n - 1)).map(|j| c.vertices[(start + j) % n]).collect();
        let mut union = BTreeSet::new();
        for &x in &arc {
            union.extend(s.neighborhood(x).unwrap().vertices);
        }
        prop_assert_eq!(s.arc_neighborhood(&arc).unwrap().vertices, union);
    }

    #[test]
    fn discrete_curves_have_wide_angles((s, c) in disk_curve()) {
        prop_assert_eq!(classify(&s, &c).unwrap(), CurveClass::DiscreteCurve);
        for &v in &c.vertices {
            prop_assert!(angle_wideness(&s, &c, v).unwrap().wideness >= 2);
        }
        let refined = insert_veblen_points(&s, &c).unwrap();
        prop_assert_eq!(classify(&refined.surface, &c).unwrap(), CurveClass::DiscreteCurve);
    }

    #[test]
    fn split_arcs_partition_the_cycle((_s, c) in disk_curve(), i in 0usize..40, j in 0usize..40) {
        let n = c.len();
        let (p, q) = (c.vertices[i % n], c.vertices[j % n]);
        prop_assume!(p != q);
        let (a, b) = split_arcs(&c, p, q).unwrap();
        let (ea, eb) = (a.edge_set(), b.edge_set());
        prop_assert!(ea.is_disjoint(&eb));
        prop_assert_eq!(ea.union(&eb).copied().collect::<BTreeSet<_>>(), c.edge_set());
        let common: BTreeSet<VertexId> = a.vertex_set().intersection(&b.vertex_set()).copied().collect();
        prop_assert_eq!(common, BTreeSet::from([p, q]));
    }

    #[test]
    fn xor_sum_is_a_group_operation((s, c) in disk_curve(), seed in any::<u64>()) {
        let d = random_curve(&s, seed, 3, 40).unwrap();
        prop_assert!(xor_sum(&c, &c).is_empty());
        prop_assert_eq!(xor_sum(&c, &d), xor_sum(&d, &c));
        let e = Path::closed(vec![]);
        prop_assert_eq!(xor_sum(&c, &e), c.edge_set());
    }

    #[test]
    fn separation_is_sound((s, c) in disk_curve()) {
        let r = components(&s, &c).unwrap();
        prop_assert_eq!(r.components.len(), 2);
        for e in s.edges() {
            let (a, b) = (r.component_of(e.0), r.component_of(e.1));
            prop_assert!(a.is_none() || b.is_none() || a == b);
        }
        let o = check_theorem2(&s, &c).unwrap();
        prop_assert!(o.verdict.passed());
        prop_assert!(o.flanks_separated());
        for e in o.veblen.surface.edges() {
            let (a, b) = (o.report.component_of(e.0), o.report.component_of(e.1));
            prop_assert!(a.is_none() || b.is_none() || a == b);
        }
    }

    #[test]
    fn contraction_removes_one_cell_per_step((s, c) in disk_curve(), k in 0usize..40) {
        let p = c.vertices[k % c.len()];
        let cells = interior_cells(&s, &c).unwrap();
        let seq = contract_cycle(&s, &c, p).unwrap();
        prop_assert_eq!(seq.steps(), cells.len() - 1);
        let distinct: BTreeSet<usize> = seq.witnesses.iter().copied().collect();
        prop_assert_eq!(distinct.len(), seq.witnesses.len());
        prop_assert!(seq.unstable_steps.is_empty());
        prop_assert!(audit_sequence(&s, &seq).is_empty());
        for (i, w) in seq.entries.windows(2).enumerate() {
            let g = is_gradually_varied(&s, &w[0], &w[1]);
            prop_assert_eq!(boundary_sum(&s, &g.witness), xor_sum(&w[0], &w[1]));
            prop_assert_eq!(g.witness, vec![seq.witnesses[i]]);
        }
    }

    #[test]
    fn formats_round_trip((s, c) in disk_curve()) {
        let text = io::write_surface(&s);
        prop_assert_eq!(io::write_surface(&io::read_surface(&text).unwrap()), text);
        let text = io::write_curve(&c);
        prop_assert_eq!(io::read_curve(&text).unwrap(), c.clone());
        let seq = contract_cycle(&s, &c, c.vertices[0]).unwrap();
        let text = io::write_sequence(&seq);
        prop_assert_eq!(io::read_sequence(&text).unwrap(), seq);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn embeddings_agree_with_ray_casting(seed in any::<u64>()) {
        let poly = random_polygon(seed, 10).unwrap();
        let text = io::write_polygon(&poly);
        prop_assert_eq!(io::read_polygon(&text).unwrap(), poly.clone());
        let e = embed(&poly, &EmbedConfig::default()).unwrap();
        let curve = e.curve();
        // Widening keeps the curve.
        prop_assert!(curve.edges().iter().all(|x| e.widened.surface.has_edge(x.0, x.1)));
        let ec = &e.snapped.complex;
        // Before subdivision an inside vertex can be cut off by the curve, so
        // only the outside is required to be a single component.
        let r = components(&ec.surface, curve).unwrap();
        prop_assert!(r.components.len() >= 2);
        let outside = r.component_of(0);
        for v in ec.surface.vertices() {
            let expected = match r.component_of(v) {
                None => Location::OnCurve,
                Some(c) if Some(c) == outside => Location::Outside,
                Some(_) => Location::Inside,
            };
            prop_assert_eq!(inside_outside(ec, curve, v), expected);
        }
        let o = check_theorem2(&ec.surface, curve).unwrap();
        prop_assert_eq!(o.report.components.len(), 2);
        prop_assert_eq!(o.verdict, Verdict::Pass);
        let text = io::write_embedded(ec);
        prop_assert_eq!(io::write_embedded(&io::read_embedded(&text).unwrap()), text);
    }
}

#[test]
fn cut_off_inside_vertex_rejoins_after_subdivision() {
    let poly = random_polygon(12097172204956728635, 10).unwrap();
    let e = embed(&poly, &EmbedConfig::default()).unwrap();
    let ec = &e.snapped.complex;
    let r = components(&ec.surface, e.curve()).unwrap();
    assert_eq!(r.components.len(), 3);
    assert!(r.components.iter().any(|c| c.len() == 1));
    let o = check_theorem2(&ec.surface, e.curve()).unwrap();
    assert_eq!(o.report.components.len(), 2);
    assert_eq!(o.verdict, Verdict::Pass);
}
