use std::f64::consts::PI;

use modular_w1::arithmetic::*;
use modular_w1::hypgeo::{mobius_apply, Point};
use modular_w1::quad::{integrate, Tolerance};
use modular_w1::transport::w1_exact;
use proptest::prelude::*;

fn disc(d: i64) -> Discriminant {
    Discriminant::new(d).unwrap()
}

fn q(a: i64, b: i64, c: i64) -> QuadraticForm {
    QuadraticForm::new(a, b, c).unwrap()
}

/// Classes of definite forms by brute force: every primitive form with
/// `|b| <= a <= c`, collapsed under the two boundary identifications.
fn brute_class_number(d: i64) -> usize {
    let mut n = 0;
    let n_abs = -d;
    for a in 1..=n_abs {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if (b == -a) || (a == c && b < 0) {
                continue;
            }
            let g = [a, b.abs(), c].into_iter().fold(0, num_gcd);
            if g == 1 {
                n += 1;
            }
        }
    }
    n
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn fundamental_discriminants() {
    assert!(is_fundamental(-4) && is_fundamental(-3) && is_fundamental(5) && is_fundamental(8));
    assert!(!is_fundamental(9) && !is_fundamental(-12) && !is_fundamental(1) && !is_fundamental(0));
    assert!(Discriminant::new(-12).is_err());
}

#[test]
fn reduced_form_lists() {
    assert_eq!(reduced_forms(disc(-4)).unwrap(), vec![q(1, 0, 1)]);
    let mut f = reduced_forms(disc(-23)).unwrap();
    f.sort();
    assert_eq!(f, vec![q(1, 1, 6), q(2, -1, 3), q(2, 1, 3)]);
    assert_eq!(class_number(disc(5)).unwrap(), 1);
    assert_eq!(class_number(disc(12)).unwrap(), 2);
}

#[test]
fn class_numbers_against_brute_force() {
    for d in -400..=-3 {
        if is_fundamental(d) {
            assert_eq!(class_number(disc(d)).unwrap(), brute_class_number(d), "D={d}");
        }
    }
}

#[test]
fn class_number_formula_definite() {
    let v = (23f64).sqrt() * modular_w1::specfun::dirichlet_l(num_complex::Complex64::new(1.0, 0.0), disc(-23))
        .unwrap()
        .re
        / PI;
    assert!((v - 3.0).abs() < 1e-8);
    for d in -200..=-3 {
        if is_fundamental(d) {
            let h = class_number(disc(d)).unwrap() as f64;
            assert!((class_number_formula(disc(d)).unwrap() - h).abs() < 1e-6, "D={d}");
        }
    }
}

#[test]
fn class_number_formula_indefinite() {
    for d in 5..=200 {
        if is_fundamental(d) {
            let h = class_number(disc(d)).unwrap() as f64;
            assert!((class_number_formula(disc(d)).unwrap() - h).abs() < 1e-6, "D={d}");
        }
    }
}

#[test]
fn heegner_measures() {
    let m4 = heegner_measure(disc(-4)).unwrap();
    assert_eq!(m4.len(), 1);
    assert!((m4.atoms()[0].point.x()).abs() < 1e-15 && (m4.atoms()[0].point.y() - 1.0).abs() < 1e-15);
    let m3 = heegner_measure(disc(-3)).unwrap();
    let p = m3.atoms()[0].point;
    assert!((p.x() + 0.5).abs() < 1e-15 && (p.y() - 3f64.sqrt() / 2.0).abs() < 1e-15);
    let m23 = heegner_measure(disc(-23)).unwrap();
    assert_eq!(m23.len(), 3);
    for (i, a) in m23.atoms().iter().enumerate() {
        assert!((a.weight - 1.0 / 3.0).abs() < 1e-16);
        for b in &m23.atoms()[i + 1..] {
            assert!((a.point.x() - b.point.x()).abs() + (a.point.y() - b.point.y()).abs() > 1e-6);
        }
    }
    assert!(heegner_measure(disc(5)).is_err());
}

#[test]
fn heegner_atom_counts() {
    for d in -300..=-3 {
        if is_fundamental(d) {
            let m = heegner_measure(disc(d)).unwrap();
            assert_eq!(m.len(), class_number(disc(d)).unwrap());
            for a in m.atoms() {
                let (x, y) = (a.point.x(), a.point.y());
                assert!((-0.5..0.5).contains(&x) && x * x + y * y >= 1.0 - 1e-12);
            }
        }
    }
}

#[test]
fn closed_geodesic_reference_lengths() {
    let g5 = closed_geodesics(disc(5)).unwrap();
    assert_eq!(g5.len(), 1);
    assert_eq!(g5[0].pell, (3, 1));
    assert!((g5[0].length - 2.0 * ((3.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
    assert!((g5[0].length - 1.924_847_300_238_413).abs() < 1e-9);
    let g8 = closed_geodesics(disc(8)).unwrap();
    assert_eq!(g8[0].pell, (6, 2));
    assert!((g8[0].length - 2.0 * (3.0 + 2.0 * 2f64.sqrt()).ln()).abs() < 1e-12);
    for end in [g5[0].endpoints.0, g5[0].endpoints.1] {
        let g = g5[0].automorph;
        let image = (g.a as f64 * end + g.b as f64) / (g.c as f64 * end + g.d as f64);
        assert!((image - end).abs() < 1e-10);
    }
}

#[test]
fn pell_solutions_match_cycles() {
    for d in 5..=60 {
        if !is_fundamental(d) {
            continue;
        }
        let want = pell_by_search(d, 100_000).unwrap();
        let geos = closed_geodesics(disc(d)).unwrap();
        for g in &geos {
            assert_eq!(g.pell, want, "D={d} form {}", g.form);
            assert!((g.length - geos[0].length).abs() < 1e-12);
            let (a, b, c, dd) = (g.automorph.a, g.automorph.b, g.automorph.c, g.automorph.d);
            assert_eq!(a * dd - b * c, 1);
            assert_eq!(a + dd, want.0);
        }
    }
}

#[test]
fn geodesic_measure_mass_and_length() {
    let m = geodesic_measure(disc(5), 200).unwrap();
    let total: f64 = m.weights().iter().sum();
    assert!((total - 1.0).abs() < 1e-12);
    let g = &closed_geodesics(disc(5)).unwrap()[0];
    let n = m.len();
    let step = g.length / n as f64;
    // Arclength of each sample step, recomputed from the semicircle points.
    let mut arc = 0.0;
    for k in 0..n {
        let s0 = -0.5 * g.length + k as f64 * step;
        let a = g.point_at(s0);
        let b = g.point_at(s0 + step);
        arc += modular_w1::hypgeo::hyperbolic_distance(a, b);
    }
    assert!((arc - 2.0 * ((3.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-6);
    // The automorph maps the start of the period to its end.
    let start = g.point_at(-0.5 * g.length);
    let end = g.point_at(0.5 * g.length);
    let moved = mobius_apply(&g.automorph, start);
    let moved_inv = mobius_apply(&g.automorph.inverse(), start);
    let d = modular_w1::hypgeo::hyperbolic_distance;
    assert!(d(moved, end).min(d(moved_inv, end)) < 1e-8);
}

#[test]
fn geodesic_measure_refinement() {
    let coarse = geodesic_measure(disc(5), 200).unwrap();
    let fine = geodesic_measure(disc(5), 400).unwrap();
    let step = closed_geodesics(disc(5)).unwrap()[0].length / coarse.len() as f64;
    let w = w1_exact(&coarse, &fine).unwrap().value;
    assert!(w <= step, "{w} > {step}");
}

#[test]
fn haar_grid_masses() {
    let m = haar_discretization(HaarGrid::default()).unwrap();
    let total: f64 = m.weights().iter().sum();
    assert!((total - 1.0).abs() < 1e-12);
    let grid = HaarGrid {
        y_max: 10.0,
        ..HaarGrid::default()
    };
    let m10 = haar_discretization(grid).unwrap();
    let tail = cuspidal_mass(&m10, 10.0 - 1e-9).unwrap();
    assert!((tail - 3.0 / (10.0 * PI)).abs() < 1e-15);
    assert!((tail - 0.095_492_965_855_137_2).abs() < 1e-12);
    assert!((cuspidal_mass(&m, 10.0).unwrap() - 3.0 / (10.0 * PI)).abs() < 0.01);
}

#[test]
fn haar_mean_height_against_exact_integral() {
    // int y dnu over y <= Y plus the atom at iY:
    // (3/pi) (ln Y - (1/2) int_{-1/2}^{1/2} ln(1 - x^2) dx) + 3/pi.
    let grid = HaarGrid::default();
    let log_int = integrate(|x| (1.0 - x * x).ln(), -0.5, 0.5, Tolerance::new(1e-16, 1e-14)).value;
    let exact = 3.0 / PI * (grid.y_max.ln() - 0.5 * log_int) + 3.0 / PI;
    let got = mean_height(&haar_discretization(grid).unwrap());
    assert!((got - exact).abs() < 1e-3, "{got} vs {exact}");
}

#[test]
fn cuspidal_mass_of_heegner_points() {
    assert_eq!(cuspidal_mass(&heegner_measure(disc(-4)).unwrap(), 2.0).unwrap(), 0.0);
    let y = 23f64.sqrt() / 2.0 + 0.01;
    assert_eq!(cuspidal_mass(&heegner_measure(disc(-23)).unwrap(), y).unwrap(), 0.0);
    assert!(cuspidal_mass(&heegner_measure(disc(-23)).unwrap(), 0.5).is_err());
}

#[test]
fn measure_table_round_trip() {
    let m = heegner_measure(disc(-47)).unwrap();
    let mut buf = Vec::new();
    m.write_table(&mut buf).unwrap();
    let back = DiscreteMeasure::read_table(buf.as_slice()).unwrap();
    assert_eq!(back.label(), "heegner");
    assert_eq!(back.params(), &[("D".to_string(), "-47".to_string())]);
    for (a, b) in m.atoms().iter().zip(back.atoms()) {
        assert_eq!(a.point.point, b.point.point);
        assert_eq!(a.weight, b.weight);
    }
    assert!(DiscreteMeasure::read_table("0 1 0.5\n".as_bytes()).is_err());
    assert!(DiscreteMeasure::read_table("0 1\n".as_bytes()).is_err());
}

#[test]
fn measure_validation() {
    let p = Point::new(0.0, 1.0).unwrap();
    assert!(DiscreteMeasure::from_points(&[(p, 0.5)], "x").is_err());
    assert!(DiscreteMeasure::from_points(&[(p, 1.5), (p, -0.5)], "x").is_err());
    assert!(DiscreteMeasure::from_points(&[], "x").is_err());
}

proptest! {
    #[test]
    fn rho_step_preserves_reduction(d in 5i64..2000) {
        prop_assume!(is_fundamental(d));
        for f in reduced_indefinite_all(d) {
            let (g, _) = f.rho_step();
            prop_assert_eq!(g.discriminant(), d);
            prop_assert!(g.is_reduced_indefinite());
        }
    }

    #[test]
    fn automorph_fixes_form(d in 5i64..300) {
        prop_assume!(is_fundamental(d));
        for g in closed_geodesics(disc(d)).unwrap() {
            let (t, u) = (g.pell.0 as i128, g.pell.1 as i128);
            prop_assert_eq!(t * t - d as i128 * u * u, 4);
            // Q(a x + b y, c x + d y) = Q(x, y), exactly.
            let m = g.automorph;
            let (a, b, c, dd) = (m.a as i128, m.b as i128, m.c as i128, m.d as i128);
            let (qa, qb, qc) = (g.form.a as i128, g.form.b as i128, g.form.c as i128);
            let eval = |x: i128, y: i128| qa * x * x + qb * x * y + qc * y * y;
            for (x, y) in [(1, 0), (0, 1), (1, 1)] {
                prop_assert_eq!(eval(a * x + b * y, c * x + dd * y), eval(x, y));
            }
        }
    }
}

#[test]
fn haar_discretization_bound_dominates_refinement_distance() {
    let coarse = HaarGrid {
        n_x: 12,
        n_levels: 12,
        y_max: 8.0,
    };
    let fine = HaarGrid {
        n_x: 24,
        n_levels: 24,
        y_max: 8.0,
    };
    let w = w1_exact(&haar_discretization(coarse).unwrap(), &haar_discretization(fine).unwrap())
        .unwrap()
        .value;
    let b = discretization_bound(coarse).unwrap() + discretization_bound(fine).unwrap();
    assert!(w <= b, "{w} > {b}");
    assert!(discretization_bound(fine).unwrap() < discretization_bound(coarse).unwrap());
}

#[test]
fn pell_solutions_for_every_discriminant_below_300() {
    for d in (5..300).filter(|&d| is_fundamental(d)) {
        for g in closed_geodesics(disc(d)).unwrap() {
            let (t, u) = (g.pell.0 as i128, g.pell.1 as i128);
            assert_eq!(t * t - d as i128 * u * u, 4, "D = {d}");
        }
    }
}
