use std::sync::Arc;

use submod_core::algorithms::{solve, Algorithm, SolveOptions};
use submod_core::testkit::brute_force_opt;
use submod_core::{enumerate_small_instances, ElementId, ElementSet, Matroid, SetFunction};

fn scaled(f: &SetFunction, c: f64) -> SetFunction {
    let oracle = Arc::clone(f.oracle());
    SetFunction::from_fn(f.ground_size(), move |s| c * oracle.value(s))
}

#[test]
fn scaling_the_objective_leaves_outputs_unchanged() {
    for inst in enumerate_small_instances(7, 3).step_by(3) {
        let (f, m) = inst.build().unwrap();
        for c in [2.0, 0.25, 3.0] {
            if c == 3.0 && !inst.function.is_integral() {
                continue;
            }
            let g = scaled(&f, c);
            for alg in Algorithm::ALL {
                let opts = SolveOptions {
                    seed: 9,
                    ..SolveOptions::default()
                };
                let a = solve(&f, &m, alg, &opts).unwrap();
                let b = solve(&g, &m, alg, &opts).unwrap();
                assert_eq!(a.solution, b.solution, "{} {alg} c={c}", inst.label);
            }
        }
    }
}

/// Relabels element `u` as `perm[u]`.
fn permuted(f: &SetFunction, m: &Matroid, perm: Vec<u32>) -> (SetFunction, Matroid) {
    let n = perm.len();
    let mut inverse = vec![0u32; n];
    for (u, &p) in perm.iter().enumerate() {
        inverse[p as usize] = u as u32;
    }
    let inverse = Arc::new(inverse);
    let back = {
        let inverse = Arc::clone(&inverse);
        move |s: &ElementSet| -> ElementSet {
            s.iter().map(|u| ElementId(inverse[u.index()])).collect()
        }
    };
    let fo = Arc::clone(f.oracle());
    let mo = Arc::clone(m.oracle());
    let back2 = back.clone();
    (
        SetFunction::from_fn(n, move |s| fo.value(&back(s))),
        Matroid::from_fn(n, move |s| mo.is_independent(&back2(s))).unwrap(),
    )
}

#[test]
fn brute_force_opt_is_order_invariant() {
    for (i, inst) in enumerate_small_instances(8, 3).enumerate().step_by(4) {
        let (f, m) = inst.build().unwrap();
        let n = inst.n as u32;
        // rotate ids by a shift that depends on the instance
        let shift = 1 + (i as u32) % (n - 1);
        let perm: Vec<u32> = (0..n).map(|u| (u + shift) % n).collect();
        let (pf, pm) = permuted(&f, &m, perm.clone());
        let orig = brute_force_opt(&f, &m).unwrap();
        let moved = brute_force_opt(&pf, &pm).unwrap();
        assert_eq!(orig.value, moved.value, "{}", inst.label);
        let image: ElementSet = orig
            .witness
            .iter()
            .map(|u| ElementId(perm[u.index()]))
            .collect();
        assert!(pm.is_base(&image));
        assert_eq!(pf.evaluate(&image), moved.value, "{}", inst.label);
    }
}
