use dumont_core::numcheck::{compare, ids, NumOptions};

#[test]
fn every_closed_form_validates() {
    let opts = NumOptions::default();
    let mut failed = Vec::new();
    for id in ids() {
        let r = compare(id, &opts);
        println!("{}", r.one_line());
        for n in &r.notes {
            println!("    {n}");
        }
        if !r.passed() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "{failed:?}");
}

use dumont_core::numcheck::{elliptic_numeric, find, run_reading, Jacobi, SamplePoint, C};
use dumont_core::series::jacobi_two_param;
use dumont_core::triangles::recur;

fn validating_reading_at(id: &str, p: f64, q: f64) -> String {
    let form = find(id).unwrap();
    let opts = NumOptions::default();
    let tri = recur(form.array, opts.order + 4).unwrap();
    let pts: Vec<SamplePoint> =
        [0.02, -0.05, 0.08].iter().map(|&x| SamplePoint { x: C::new(x, 0.0), p, q }).collect();
    for reading in &form.readings {
        let res = run_reading(&form, reading, &pts, &tri, &opts);
        if res.compared == pts.len() && res.within == res.compared {
            return res.reading;
        }
    }
    panic!("no reading of {id} holds at p={p}, q={q}");
}

#[test]
fn s_form_at_half_quarter() {
    assert_eq!(validating_reading_at("lem:aa0", 0.5, 0.25), "as stated, branch signs fixed");
}

#[test]
fn t_form_at_spec_point() {
    assert!(validating_reading_at("th_TT", 0.64, 0.25).starts_with("corrected"));
}

#[test]
fn c_at_q_one_is_finite_and_matches() {
    assert_eq!(validating_reading_at("CO:caseC.q=1", 2.0, 1.0), "as stated");
    let v = dumont_core::numcheck::forms::c_q1(C::new(0.05, 0.0), 2.0);
    assert!(v.re.is_finite());
    let one = dumont_core::numcheck::forms::c_p0(C::new(0.0, 0.0), 0.25);
    assert_eq!(one, C::new(1.0, 0.0));
}

#[test]
fn integrator_agrees_with_series() {
    let js = jacobi_two_param(16);
    let point = [C::new(-0.5, 0.0), C::new(-0.5, 0.0)];
    for u in [C::new(0.2, 0.0), C::new(-0.15, 0.1), C::new(0.0, 0.2), C::new(0.05, -0.19)] {
        let (s, c, d) = elliptic_numeric(u, point[0], point[1], 256).unwrap();
        assert!((s - js.sn.eval_at(u, &point)).norm() < 1e-9);
        assert!((c - js.cn.eval_at(u, &point)).norm() < 1e-9);
        assert!((d - js.dn.eval_at(u, &point)).norm() < 1e-9);
    }
}

#[test]
fn conserved_quantities() {
    let jac = Jacobi::default();
    for (u, m) in [(0.7, 0.5), (1.3, 0.2), (0.4, 0.9)] {
        let (s, c, d) = jac.eval(C::new(u, 0.0), C::new(m, 0.0)).unwrap();
        assert!((s * s + c * c - 1.0).norm() < 1e-12);
        assert!((d * d + m * s * s - 1.0).norm() < 1e-12);
    }
}
