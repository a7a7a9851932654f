use pjroot::pencil::{build_pencil, RationalFunction};
use pjroot::pjrl::{naive_homogenization, projective_closure, slice_at, specialize, vanishes_at, ParameterValue, Specialization};
use pjroot::poly::{int, rat};
use pjroot::solver::{k_grid, sweep_conventional};

const PLANTS: [&str; 5] = ["s/(s^2+1)", "(s+1)/s^2", "1/(s*((s+4)^2+4^2))", "(1-s^2)/(1+s^2)", "(s^2+2)/(s^3+s+1)"];

fn gains() -> Vec<ParameterValue> {
    let mut v: Vec<ParameterValue> =
        [rat(-3, 2), int(-1), rat(1, 3), int(1), int(5)].into_iter().map(ParameterValue::finite).collect();
    v.push(ParameterValue::zero());
    v.push(ParameterValue::infinity());
    v
}

#[test]
fn closure_is_homogeneous_and_contains_the_pencil() {
    for p in PLANTS {
        let pair = build_pencil(&RationalFunction::parse(p).unwrap()).unwrap();
        let closure = projective_closure(&pair).unwrap();
        assert!(closure.check_invariants().unwrap(), "{p}");
    }
}

#[test]
fn naive_slices_contain_closure_slices() {
    for p in PLANTS {
        let pair = build_pencil(&RationalFunction::parse(p).unwrap()).unwrap();
        let closure = projective_closure(&pair).unwrap();
        let naive = naive_homogenization(&pair).unwrap();
        for k in gains() {
            let slice = slice_at(&closure, &k).unwrap();
            let polys = specialize(&naive, &Specialization::At(k.clone()), false).unwrap();
            for pt in slice.points() {
                let on = if pt.is_rational() {
                    vanishes_at(&polys, pt)
                } else {
                    let c = pt.to_f64();
                    polys.iter().all(|f| f.evaluate_f64(&c).abs() < 1e-9)
                };
                assert!(on, "{p} at {k:?}: naive system misses {pt}");
            }
        }
    }
}

#[test]
fn sweep_residuals_are_small() {
    for p in PLANTS {
        let g = RationalFunction::parse(p).unwrap();
        let grid = k_grid(-1000.0, 1000.0, 200);
        for s in sweep_conventional(&g, &grid) {
            assert!(s.residual < 1e-8, "{p} at k={}: residual {}", s.k, s.residual);
        }
    }
}
