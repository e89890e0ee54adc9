use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::groebner::Ideal;
use crate::newton::{integral_closure, multiplier_ideal, MonomialIdeal};
use crate::poly::{Field, MonomialOrder, Ring};
use crate::testutil::{ideal, ring};

fn xy() -> Arc<Ring> {
    ring(&["x", "y"])
}

fn xyz() -> Arc<Ring> {
    ring(&["x", "y", "z"])
}

fn opts(seed: u64) -> CoreOptions {
    CoreOptions {
        seed,
        ..CoreOptions::default()
    }
}

fn same(a: &Ideal, b: &Ideal) -> bool {
    a.equals(b).unwrap()
}

/// Normal cofinite monomial fixtures in two and three variables.
fn fixtures() -> Vec<Ideal> {
    let (r2, r3) = (xy(), xyz());
    vec![
        ideal(&r2, "x, y"),
        ideal(&r2, "x^2, x*y, y^2"),
        ideal(&r2, "x^3, x*y, y^2"),
        ideal(&r2, "x^2, x*y, y^3"),
        ideal(&r3, "x, y, z"),
        ideal(&r3, "x^2, y, z"),
    ]
}

#[test]
fn parameter_ideal_is_its_own_reduction() {
    let r = xy();
    let i = ideal(&r, "x^2, y^2");
    for seed in 0..3 {
        let cert = random_reduction(&i, None, seed, &opts(seed)).unwrap();
        assert!(same(&cert.reduction, &i));
        assert_eq!(cert.reduction_number, 0);
        assert_eq!(cert.reduction.generators().len(), 2);
    }
}

#[test]
fn reduction_numbers_of_examples() {
    let r = xy();
    let m2 = ideal(&r, "x^2, x*y, y^2");
    assert_eq!(is_reduction(&m2, &m2, 5).unwrap(), Some(0));
    assert_eq!(is_reduction(&m2, &ideal(&r, "x^2, y^2"), 5).unwrap(), Some(1));
    assert_eq!(is_reduction(&m2, &ideal(&r, "x^2"), 5).unwrap(), None);
    assert!(matches!(
        is_reduction(&ideal(&r, "x^2, y^2"), &m2, 5),
        Err(Error::NotContained)
    ));
    let cert = random_reduction(&m2, None, 3, &opts(3)).unwrap();
    assert_eq!(cert.reduction_number, 1);
}

#[test]
fn sampled_reduction_of_three_generator_ideal() {
    let r = xy();
    let i = ideal(&r, "x^3, x*y, y^2");
    let cert = random_reduction(&i, Some(2), 11, &opts(11)).unwrap();
    assert!(cert.reduction_number <= 2);
    // frozen from a seeded run
    assert_eq!(cert.reduction_number, 1);
    assert_eq!(cert.attempts, 1);
    assert!(i.contains(&cert.reduction).unwrap());
}

#[test]
fn local_reduction_of_non_graded_ideal() {
    // (x + y^2, y^3) is a reduction of itself; locally x^2 is not needed
    let r = xy();
    let i = ideal(&r, "x + y^2, y^3");
    assert_eq!(is_reduction(&i, &i, 3).unwrap(), Some(0));
    let cert = random_reduction(&i, None, 5, &opts(5)).unwrap();
    assert_eq!(cert.reduction_number, 0);
}

#[test]
fn colon_cores_of_examples() {
    let r = xy();
    let o = opts(0);
    let i = ideal(&r, "x^2, y^2");
    let c = core_colon(&i, None, None, &o).unwrap();
    assert!(same(&c.ideal, &i));
    assert_eq!(c.reduction_number(), Some(0));
    assert!(c.exact && c.warnings.is_empty());

    let m = ideal(&r, "x, y");
    assert!(same(&core_colon(&m, None, None, &o).unwrap().ideal, &m));

    let m2 = ideal(&r, "x^2, x*y, y^2");
    let m3 = ideal(&r, "x^3, x^2*y, x*y^2, y^3");
    let c = core_colon(&m2, None, None, &o).unwrap();
    assert!(same(&c.ideal, &m3));
    assert_eq!(c.route, Route::Colon);
    assert_eq!(c.reduction_number(), Some(1));
}

#[test]
fn hand_derived_colon_for_the_square_of_the_maximal_ideal() {
    let r = xy();
    let m2 = ideal(&r, "x^2, x*y, y^2");
    let j = ideal(&r, "x^2, y^2");
    let cert = ReductionCertificate {
        base_ideal: m2.clone(),
        reduction: j.clone(),
        reduction_number: is_reduction(&m2, &j, 5).unwrap().unwrap(),
        seed: 0,
        coeff_bound: 20,
        attempts: 1,
        mode: SamplingMode::General,
    };
    let c = core_colon(&m2, Some(cert), None, &opts(0)).unwrap();
    let direct = ideal(&r, "x^4, x^2*y^2, y^4").colon(&m2).unwrap();
    assert!(same(&c.ideal, &direct));
    assert!(same(&c.ideal, &ideal(&r, "x^3, x^2*y, x*y^2, y^3")));
    // x^2 fails since x^3*y is not in J^2
    assert!(!c.ideal.member(&crate::testutil::poly(&r, "x^2")).unwrap());
}

#[test]
fn certificate_for_another_ideal_is_rejected() {
    let r = xy();
    let i = ideal(&r, "x^2, y^2");
    let cert = random_reduction(&i, None, 0, &opts(0)).unwrap();
    let m = ideal(&r, "x, y");
    assert!(matches!(
        core_colon(&m, Some(cert), None, &opts(0)),
        Err(Error::OutOfRange(_))
    ));
}

#[test]
fn non_graded_colon_core() {
    // after x -> x - y^2 this is (x, y^3), a parameter ideal
    let r = xy();
    let i = ideal(&r, "x + y^2, y^3");
    let c = core_colon(&i, None, None, &opts(1)).unwrap();
    assert!(same(&c.ideal, &i));
}

#[test]
fn polyhedral_cores() {
    let r = xy();
    let c = core_polyhedral(&ideal(&r, "x^2, x*y, y^2"), None, false).unwrap();
    assert!(same(&c.ideal, &ideal(&r, "x^3, x^2*y, x*y^2, y^3")));
    assert!(c.exact && c.warnings.is_empty());
}

#[test]
fn forced_polyhedral_core_is_labeled() {
    // not integrally closed, hence not normal
    let r = xy();
    let i = ideal(&r, "x^2, y^3");
    assert!(matches!(
        core_polyhedral(&i, None, false),
        Err(Error::NotNormal { failing_power: 1 })
    ));
    let forced = core_polyhedral(&i, None, true).unwrap();
    assert!(!forced.exact);
    assert_eq!(forced.warnings, vec![WARN_UNVERIFIED.to_string()]);
}

#[test]
fn sandwich_on_the_square_of_the_maximal_ideal() {
    let r = xy();
    let m2 = ideal(&r, "x^2, x*y, y^2");
    let m3 = ideal(&r, "x^3, x^2*y, x*y^2, y^3");
    let c = core_sandwich(&m2, None, &opts(42)).unwrap();
    assert!(c.exact);
    assert!(same(c.lower_bound.as_ref().unwrap(), &m3));
    assert!(same(c.upper_bound.as_ref().unwrap(), &m3));
    assert!(same(&c.ideal, &m3));
    assert_eq!(c.trials, Some(25));
}

#[test]
fn sandwich_with_one_trial_is_that_reduction() {
    let r = xy();
    let m2 = ideal(&r, "x^2, x*y, y^2");
    let o = CoreOptions { trials: 1, ..opts(9) };
    let c = core_sandwich(&m2, None, &o).unwrap();
    assert!(!c.exact);
    assert!(same(&c.ideal, &c.certificate.as_ref().unwrap().reduction));
    // a non-graded reduction is contracted from the local ring
    let i = ideal(&r, "x^3, x*y, y^2");
    let c = core_sandwich(&i, None, &o).unwrap();
    let cert = c.certificate.as_ref().unwrap();
    assert!(!cert.reduction.is_homogeneous());
    assert!(same(&c.ideal, &cert.local_reduction().unwrap()));
    assert!(c.ideal.is_cofinite());
    let zero = CoreOptions { trials: 0, ..o };
    assert!(matches!(core_sandwich(&m2, None, &zero), Err(Error::OutOfRange(_))));
}

#[test]
fn sandwich_on_the_maximal_ideal_with_two_trials() {
    let r = xy();
    let m = ideal(&r, "x, y");
    let o = CoreOptions { trials: 2, ..opts(0) };
    let c = core_sandwich(&m, None, &o).unwrap();
    // two parameter pairs of linear forms both generate m
    assert!(same(&c.ideal, &m));
    assert!(c.exact);
}

#[test]
fn sandwich_lower_bound_from_colon_for_non_monomial_ideals() {
    let r = xy();
    let i = ideal(&r, "x^2 + y^2, x*y");
    let c = core_sandwich(&i, None, &CoreOptions { trials: 4, ..opts(2) }).unwrap();
    let lo = c.lower_bound.as_ref().unwrap();
    assert!(c.upper_bound.as_ref().unwrap().contains(lo).unwrap());
    assert!(c.warnings.iter().any(|w| w.contains("colon route")));
}

#[test]
fn coefficient_ideals_of_examples() {
    let r = xy();
    let o = opts(0);
    let a = coefficient_ideal(&ideal(&r, "x^2, x*y, y^2"), None, None, &o).unwrap();
    assert!(same(&a.ideal, &ideal(&r, "x, y")));
    let a = coefficient_ideal(&ideal(&r, "x^2, y^2"), None, None, &o).unwrap();
    assert!(a.ideal.is_unit());
}

#[test]
fn coefficient_ideal_matches_lower_adjoint() {
    let r = xy();
    let i = ideal(&r, "x^3, x*y, y^2");
    let a = coefficient_ideal(&i, None, None, &opts(4)).unwrap();
    let mono = MonomialIdeal::from_ideal(&i).unwrap();
    let adj = multiplier_ideal(&mono, 1).unwrap().to_ideal(MonomialOrder::Grevlex);
    assert!(same(&a.ideal, &adj));
    assert!(same(&a.ideal, &ideal(&r, "x, y")));
}

#[test]
fn power_formula_examples() {
    let r = xy();
    let check = verify_core_power(&ideal(&r, "x, y"), None, 2).unwrap();
    assert!(check.holds);
    assert!(same(&check.lhs, &ideal(&r, "x^3, x^2*y, x*y^2, y^3")));
    let r3 = xyz();
    let check = verify_core_power(&ideal(&r3, "x, y, z"), None, 2).unwrap();
    assert!(check.holds);
    let m = Ideal::maximal(&r3, MonomialOrder::Grevlex);
    assert!(same(&check.lhs, &m.power(4).unwrap()));
    assert!(matches!(
        verify_core_power(&ideal(&r, "x, y"), None, 1),
        Err(Error::OutOfRange(_))
    ));
}

#[test]
fn integrally_closed_core_examples() {
    let r = xy();
    let o = opts(0);
    let c = verify_core_integrally_closed(&ideal(&r, "x^2, x*y, y^2"), None, &o).unwrap();
    assert!(c.integrally_closed);
    assert!(same(&c.core, &ideal(&r, "x^3, x^2*y, x*y^2, y^3")));
    let c = verify_core_integrally_closed(&ideal(&r, "x^3, x*y, y^2"), None, &o).unwrap();
    assert!(c.integrally_closed);
    assert!(matches!(
        verify_core_integrally_closed(&ideal(&r, "x^2, y^2"), None, &o),
        Err(Error::NotIntegrallyClosed)
    ));
}

#[test]
fn graded_cores_of_maximal_ideal_powers() {
    let o = opts(0);
    let r2 = xy();
    for n in 1..=2 {
        let rep = graded_core_maximal(&r2, n, &o).unwrap();
        assert!(rep.matches && rep.graded_matches);
    }
    let rep = graded_core_maximal(&r2, 2, &o).unwrap();
    assert!(same(&rep.predicted, &ideal(&r2, "x^3, x^2*y, x*y^2, y^3")));
    let rep = graded_core_maximal(&xyz(), 2, &o).unwrap();
    assert!(rep.matches);
    let m = Ideal::maximal(&xyz(), MonomialOrder::Grevlex);
    assert!(same(&rep.predicted, &m.power(4).unwrap()));
    let r1 = ring(&["x"]);
    assert!(matches!(graded_core_maximal(&r1, 1, &o), Err(Error::OutOfRange(_))));
}

#[test]
fn reduction_independence_on_fixtures() {
    for i in fixtures() {
        let first = core_colon(&i, None, None, &opts(0)).unwrap().ideal;
        for seed in 1..5 {
            let c = core_colon(&i, None, None, &opts(seed)).unwrap();
            assert!(same(&c.ideal, &first), "seed {seed} on ({i})");
        }
    }
}

#[test]
fn routes_agree_on_fixtures() {
    for i in fixtures() {
        let colon = core_colon(&i, None, None, &opts(7)).unwrap();
        let poly = core_polyhedral(&i, None, false).unwrap();
        assert!(same(&colon.ideal, &poly.ideal), "({i})");
        // core = I·adj(I^{d-1})
        let mono = MonomialIdeal::from_ideal(&i).unwrap();
        let d = i.ring().dim() as u32;
        let adj = if d == 1 {
            MonomialIdeal::unit(i.ring())
        } else {
            multiplier_ideal(&mono, d - 1).unwrap()
        };
        let rhs = mono.product(&adj).unwrap().to_ideal(MonomialOrder::Grevlex);
        assert!(same(&colon.ideal, &rhs), "({i})");
    }
}

#[test]
fn cores_of_fixtures_are_integrally_closed_and_inside_reductions() {
    for (k, i) in fixtures().into_iter().enumerate() {
        let c = core_colon(&i, None, None, &opts(k as u64)).unwrap();
        let mono = MonomialIdeal::from_ideal(&c.ideal).unwrap();
        assert_eq!(integral_closure(&mono).unwrap(), mono);
        let j = c.certificate.as_ref().unwrap().local_reduction().unwrap();
        assert!(j.contains(&c.ideal).unwrap());
        // the Briançon-Skoda bound adj(I^d) ⊆ J
        let d = i.ring().dim() as u32;
        let adj = multiplier_ideal(&MonomialIdeal::from_ideal(&i).unwrap(), d).unwrap();
        assert!(j.contains(&adj.to_ideal(MonomialOrder::Grevlex)).unwrap());
    }
}

#[test]
fn results_are_deterministic() {
    let r = xy();
    let i = ideal(&r, "x^3, x*y, y^2");
    let o = CoreOptions { trials: 5, ..opts(13) };
    let a = core_sandwich(&i, None, &o).unwrap();
    let b = core_sandwich(&i, None, &o).unwrap();
    assert_eq!(a.ideal.canonical_generators(), b.ideal.canonical_generators());
    assert_eq!(
        a.certificate.as_ref().unwrap().reduction.generators(),
        b.certificate.as_ref().unwrap().reduction.generators()
    );
    assert_eq!(a.warnings, b.warnings);
    let other = core_sandwich(&i, None, &CoreOptions { seed: 14, ..o }).unwrap();
    assert_ne!(
        a.certificate.unwrap().reduction.generators(),
        other.certificate.unwrap().reduction.generators()
    );
}

#[test]
fn child_seeds_separate_streams() {
    assert_ne!(child_seed(0, 1, 0), child_seed(0, 2, 0));
    assert_ne!(child_seed(0, 1, 0), child_seed(0, 1, 1));
    assert_ne!(child_seed(0, 1, 0), child_seed(1, 1, 0));
    assert_eq!(splitmix64(0), 0xe220_a839_7b1d_cdaf);
}

#[test]
fn small_fields_are_rejected() {
    let r = Ring::new(&["x", "y"], Field::Prime(7)).unwrap();
    let m = Ideal::maximal(&r, MonomialOrder::Grevlex);
    assert!(matches!(
        random_reduction(&m, None, 0, &opts(0)),
        Err(Error::FieldTooSmall {
            characteristic: 7,
            bound: 20
        })
    ));
    let zero = CoreOptions {
        coeff_bound: 0,
        ..opts(0)
    };
    let r = xy();
    assert!(matches!(
        random_reduction(&ideal(&r, "x, y"), None, 0, &zero),
        Err(Error::OutOfRange(_))
    ));
}

#[test]
fn prime_characteristic_labels() {
    let r = Ring::new(&["x", "y", "z"], Field::Prime(32003)).unwrap();
    let m = Ideal::maximal(&r, MonomialOrder::Grevlex);
    // r = 1: no hypothesis on the characteristic is needed
    let c = core_colon(&m.power(2).unwrap(), None, None, &opts(0)).unwrap();
    assert_eq!(c.reduction_number(), Some(1));
    assert!(c.exact && c.warnings.is_empty());
    // r = 2: labeled heuristic
    let c = core_colon(&m.power(3).unwrap(), None, None, &opts(0)).unwrap();
    assert_eq!(c.reduction_number(), Some(2));
    assert!(!c.exact);
    assert_eq!(c.warnings, vec![WARN_HEURISTIC.to_string()]);
    assert!(same(&c.ideal, &m.power(7).unwrap()));
}

#[test]
fn non_cofinite_ideals_need_h() {
    let r = xyz();
    let i = ideal(&r, "x^2, y^2");
    assert!(matches!(
        random_reduction(&i, None, 0, &opts(0)),
        Err(Error::OutOfRange(_))
    ));
    let c = core_colon(&i, None, Some(2), &opts(0)).unwrap();
    assert!(same(&c.ideal, &i));
    assert_eq!(c.warnings, vec![WARN_CALLER_HYPOTHESES.to_string()]);
}

#[test]
fn graded_mode_needs_forms_of_one_degree() {
    let r = xy();
    let o = CoreOptions {
        mode: SamplingMode::Graded,
        ..opts(3)
    };
    let cert = random_reduction(&ideal(&r, "x^2, x*y, y^2"), None, 3, &o).unwrap();
    assert!(cert
        .reduction
        .generators()
        .iter()
        .all(|g| g.is_homogeneous() && g.degree() == Some(2)));
    assert_eq!(cert.mode, SamplingMode::Graded);
    for bad in ["x^2, x*y, y^3", "x + y^2, y^3"] {
        assert!(matches!(
            random_reduction(&ideal(&r, bad), None, 0, &o),
            Err(Error::OutOfRange(_))
        ));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn sandwich_contains_colon_core(seed in any::<u64>(), k in 0usize..4) {
        let i = fixtures().swap_remove(k);
        let o = CoreOptions { trials: 3, ..opts(seed) };
        let s = core_sandwich(&i, None, &o).unwrap();
        let c = core_colon(&i, None, None, &o).unwrap();
        let lo = s.lower_bound.as_ref().unwrap();
        let up = s.upper_bound.as_ref().unwrap();
        prop_assert!(c.ideal.contains(lo).unwrap());
        prop_assert!(up.contains(&c.ideal).unwrap());
        prop_assert_eq!(s.exact, same(lo, up));
        for cert in [&s.certificate, &c.certificate] {
            let j = cert.as_ref().unwrap().local_reduction().unwrap();
            prop_assert!(j.contains(&c.ideal).unwrap());
        }
    }

    #[test]
    fn sampled_reductions_are_verified(seed in any::<u64>(), k in 0usize..4) {
        let i = fixtures().swap_remove(k);
        let cert = random_reduction(&i, None, seed, &opts(seed)).unwrap();
        let r = cert.reduction_number;
        prop_assert!(i.contains(&cert.reduction).unwrap());
        // I^{s+1} = J·I^s at the origin iff I^{s+1} ⊆ J·I^s + m·I^{s+1}
        let m = Ideal::maximal(i.ring(), MonomialOrder::Grevlex);
        let holds = |s: u32| {
            let next = i.power(s + 1).unwrap();
            let rhs = cert.reduction.product(&i.power(s).unwrap()).unwrap();
            rhs.sum(&m.product(&next).unwrap()).unwrap().contains(&next).unwrap()
        };
        prop_assert!(holds(r));
        if r > 0 {
            prop_assert!(!holds(r - 1));
        }
    }
}
