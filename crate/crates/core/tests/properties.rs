use gasket_fif::expr::{builtin_figure_fields, parse, BinOp, Expr};
use gasket_fif::fixtures::random_specs;
use gasket_fif::fractal::{DEFAULT_COMPAT_TOL, FIGURE_COMPAT_TOL, RESIDUAL_TOL};
use gasket_fif::gasket::{
    apply_map, enumerate_vm, invert_map, locate, representations, vertex_count, DEDUP_TOL,
    MEMBERSHIP_TOL,
};
use gasket_fif::verify::{check_alpha_continuity, FieldPair};
use gasket_fif::{Address, CellIndex, Point2, ScalarField, ScaleVector};
use proptest::prelude::*;

fn gasket_point() -> impl Strategy<Value = Point2> {
    // random point of the closed base triangle
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(mut s, mut t)| {
        if s + t > 1.0 {
            s = 1.0 - s;
            t = 1.0 - t;
        }
        Point2::new(s + 0.5 * t, t * 0.8660254037844386)
    })
}

fn cell() -> impl Strategy<Value = CellIndex> {
    (1u32..=3).prop_map(|i| CellIndex::new(i).unwrap())
}

fn word(max_len: usize) -> impl Strategy<Value = Address> {
    prop::collection::vec(cell(), 0..=max_len).prop_map(Address::new)
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0.0..10.0f64).prop_map(Expr::Num),
        Just(Expr::X),
        Just(Expr::Y),
        Just(Expr::Pi),
        Just(Expr::E),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (
                prop_oneof![
                    Just(BinOp::Add),
                    Just(BinOp::Sub),
                    Just(BinOp::Mul),
                    Just(BinOp::Div),
                    Just(BinOp::Pow)
                ],
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, a, b)| Expr::Binary(op, Box::new(a), Box::new(b))),
            (0usize..7, inner).prop_map(|(k, e)| {
                use gasket_fif::expr::Func::*;
                let f = [Sin, Cos, Tan, Exp, Log, Sqrt, Abs][k];
                Expr::Call(f, Box::new(e))
            }),
        ]
    })
}

#[test]
fn lattice_sizes_up_to_eight() {
    for m in 0..=8 {
        let lattice = enumerate_vm(m).unwrap();
        assert_eq!(lattice.len(), (3usize.pow(m as u32 + 1) + 3) / 2);
        assert_eq!(lattice.len(), vertex_count(m));
    }
}

#[test]
fn lattice_vertices_match_their_ids() {
    for m in 0..=6 {
        let lattice = enumerate_vm(m).unwrap();
        for v in lattice.vertices() {
            assert!(v.id.canonical);
            assert!(v.point.distance(&v.id.point()) <= DEDUP_TOL);
            assert!(Address::root().contains(v.point, MEMBERSHIP_TOL));
        }
    }
}

#[test]
fn lattice_points_are_distinct() {
    let lattice = enumerate_vm(5).unwrap();
    let pts: Vec<_> = lattice.points().collect();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            assert!(a.distance(b) > DEDUP_TOL);
        }
    }
}

#[test]
fn lattices_are_nested() {
    for m in 0..=6 {
        let coarse = enumerate_vm(m).unwrap();
        let fine = enumerate_vm(m + 1).unwrap();
        for v in coarse.vertices() {
            let pos = fine.position(v.key).expect("V_m inside V_m+1");
            assert!(fine.vertices()[pos].point.distance(&v.point) <= DEDUP_TOL);
        }
    }
}

#[test]
fn locate_finds_a_containing_cell() {
    for m in 0..=5 {
        for v in enumerate_vm(m).unwrap().vertices() {
            let found = locate(v.id.point(), m).unwrap();
            assert_eq!(found.depth(), m);
            assert!(found.contains(v.point, MEMBERSHIP_TOL));
        }
    }
}

#[test]
fn representations_cover_each_vertex_once_canonically() {
    for m in 0..=4 {
        let reps = representations(m).unwrap();
        assert_eq!(reps.len(), 3usize.pow(m as u32 + 1));
        assert_eq!(reps.iter().filter(|r| r.canonical).count(), vertex_count(m));
    }
}

#[test]
fn figure_pairs_are_total_on_the_gasket() {
    let lattice = enumerate_vm(8).unwrap();
    for fig in 1..=4 {
        let (f, b) = builtin_figure_fields(fig).unwrap();
        for p in lattice.points() {
            f.eval(p).unwrap();
            b.eval(p).unwrap();
        }
    }
}

#[test]
fn every_representation_gets_the_table_value() {
    // Both parents of a shared vertex must produce the same value; the
    // address unrolling follows the specific representation.
    for spec_text in random_specs(11, 4) {
        let (f, b) = spec_text.fields();
        let spec = gasket_fif::validate(&f, &b, spec_text.alpha, DEFAULT_COMPAT_TOL).unwrap();
        let table = spec.vm_table(6).unwrap();
        for rep in representations(6).unwrap() {
            let pv = spec.eval_vertex(&rep.address, rep.corner, 6).unwrap();
            let want = table.value(rep.key()).unwrap();
            assert!((pv.value - want).abs() <= RESIDUAL_TOL, "{rep:?}");
        }
    }
}

#[test]
fn figure_specs_have_small_residuals() {
    for fig in 1..=4 {
        let pair = FieldPair::figure(fig).unwrap();
        assert_eq!(pair.compat_tol, FIGURE_COMPAT_TOL);
        let spec = pair.spec(ScaleVector::new(0.9, -0.4, 0.6)).unwrap();
        let table = spec.vm_table(5).unwrap();
        assert!(table.functional_residual().unwrap() <= RESIDUAL_TOL);
    }
}

#[test]
fn table_depth_twelve() {
    let (f, b) = builtin_figure_fields(1).unwrap();
    let spec = gasket_fif::validate(&f, &b, ScaleVector::uniform(0.5), 1e-9).unwrap();
    let table = spec.vm_table(12).unwrap();
    assert_eq!(table.values().len(), vertex_count(12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invert_undoes_apply(i in cell(), t in gasket_point()) {
        let back = invert_map(i, apply_map(i, t)).unwrap();
        prop_assert!(back.distance(&t) <= 1e-12);
    }

    #[test]
    fn apply_undoes_invert(i in cell(), t in gasket_point()) {
        let inside = apply_map(i, t);
        let again = apply_map(i, invert_map(i, inside).unwrap());
        prop_assert!(again.distance(&inside) <= 1e-12);
    }

    #[test]
    fn locate_chaos_like_points(w in word(30)) {
        let p = w.apply(Point2::new(0.0, 0.0));
        let found = locate(p, 12).unwrap();
        prop_assert!(found.contains(p, MEMBERSHIP_TOL));
    }

    #[test]
    fn print_then_parse_evaluates_identically(tree in expr_tree(), pts in prop::collection::vec(gasket_point(), 100)) {
        let printed = tree.to_string();
        let reparsed = parse(&printed).unwrap();
        prop_assert_eq!(reparsed.ast(), &tree);
        let original = ScalarField::parse(&printed).unwrap();
        for p in pts {
            let a = tree.eval(p.x, p.y);
            let b = original.eval(p);
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.to_bits(), b.to_bits()),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }
    }

    #[test]
    fn truncation_error_decays(seed in 0u64..1000, w in prop::collection::vec(cell(), 40..80)) {
        let text = &random_specs(seed, 1)[0];
        let (f, b) = text.fields();
        let spec = gasket_fif::validate(&f, &b, text.alpha, DEFAULT_COMPAT_TOL).unwrap();
        let addr = Address::new(w);
        for n in [0usize, 3, 10, 25] {
            let coarse = spec.eval_point(&addr, n).unwrap();
            let fine = spec.eval_point(&addr, n + 5).unwrap();
            prop_assert!((coarse.value - fine.value).abs() <= coarse.error_bound + 1e-12);
        }
    }

    #[test]
    fn continuity_lhs_is_symmetric(a in -0.9..0.9f64, b in -0.9..0.9f64, fig in 1u32..=4) {
        let pair = FieldPair::figure(fig).unwrap();
        let (x, y) = (ScaleVector::uniform(a), ScaleVector::new(b, a, -b));
        let ab = check_alpha_continuity(&pair, x, y, 4).unwrap();
        let ba = check_alpha_continuity(&pair, y, x, 4).unwrap();
        prop_assert_eq!(ab.lhs.to_bits(), ba.lhs.to_bits());
        prop_assert!(ab.pass && ba.pass);
    }
}
