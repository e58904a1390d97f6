use fracineq::fracint::Interval;
use fracineq::hfam::{FunctionSpec, HFunction};
use fracineq_cli::spec::{parse_function, parse_h};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = (u8, Vec<f64>)> {
    (0u8..6, prop::collection::vec(-5.0f64..5.0, 6))
}

proptest! {
    #[test]
    fn function_text_round_trips(fam in family(), a in -3.0f64..3.0, len in 0.01f64..4.0, scale in prop::option::of(0.01f64..10.0)) {
        let (k, v) = fam;
        let i = Interval::new(a, a + len).unwrap();
        let f = match k {
            0 => FunctionSpec::power(v[0], i),
            1 => FunctionSpec::quadratic(v[0], v[1], v[2], i),
            2 => FunctionSpec::exp(i),
            3 => FunctionSpec::abs_power(v[0].abs() + 0.5, v[1], i),
            4 => FunctionSpec::constant(v[0], i),
            _ => FunctionSpec::piecewise_linear(vec![(v[0] - 11.0, v[1]), (v[2], v[3]), (v[4] + 11.0, v[5])], i),
        }
        .unwrap();
        let f = match scale {
            Some(c) => f.scaled(c),
            None => f,
        };
        let text = f.spec_text();
        let back = parse_function(&format!("f={text}")).unwrap();
        prop_assert_eq!(back.spec_text(), text.clone());
        for t in [0.0, 0.3, 1.0] {
            let x = i.lerp(t);
            let (p, q) = (f.eval(x), back.eval(x));
            prop_assert!(p == q || (p.is_nan() && q.is_nan()), "{} at {}: {} vs {}", text, x, p, q);
        }
    }

    #[test]
    fn h_text_round_trips(k in 0u8..5, s in 0.01f64..3.0) {
        let h = match k {
            0 => HFunction::identity(),
            1 => HFunction::constant(s).unwrap(),
            2 => HFunction::power(s).unwrap(),
            3 => HFunction::reciprocal(),
            _ => HFunction::square(),
        };
        let text = h.spec_text();
        let back = parse_h(&format!("h={text}")).unwrap();
        prop_assert_eq!(back.spec_text(), text);
        for t in [0.1, 0.5, 0.9] {
            prop_assert_eq!(back.eval(t), h.eval(t));
        }
    }
}
