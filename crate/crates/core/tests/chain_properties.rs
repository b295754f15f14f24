use greenchain::chain::{
    boundary_matrix, char_func, greens_finite, greens_strong, lu, wall_values, Couplings, DeltaChain, Matrix,
};
use greenchain::greens::{
    CustomGreens, CylindricalGreens, FreeGreens, Geometry, OscillatorGreens, RectangularGreens, SphericalGreens,
    UnitSystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Gauss–Jordan elimination on an augmented system, written independently
/// of the crate's LU.
fn gauss_jordan(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()).unwrap();
        a.swap(c, p);
        b.swap(c, p);
        let d = a[c][c];
        for j in 0..n {
            a[c][j] /= d;
        }
        b[c] /= d;
        for i in 0..n {
            if i != c {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] -= f * a[c][j];
                }
                b[i] -= f * b[c];
            }
        }
    }
    b
}

struct Case {
    g0: Box<dyn FreeGreens>,
    geometry: Geometry,
    param: f64,
    span: (f64, f64),
}

fn cases() -> Vec<Case> {
    let units = UnitSystem::natural();
    vec![
        Case { g0: Box::new(RectangularGreens), geometry: Geometry::Rectangular, param: 1.1, span: (-2.0, 2.0) },
        Case { g0: Box::new(CylindricalGreens { mode: 1 }), geometry: Geometry::Cylindrical, param: 0.9, span: (0.3, 3.0) },
        Case { g0: Box::new(SphericalGreens { mode: 0 }), geometry: Geometry::Spherical, param: 1.4, span: (0.3, 3.0) },
        Case {
            g0: Box::new(OscillatorGreens::centered_in_box(units, 1.0)),
            geometry: Geometry::Oscillator,
            param: 2.37,
            span: (-1.0, 2.0),
        },
    ]
}

fn random_positions(rng: &mut ChaCha8Rng, n: usize, (lo, hi): (f64, f64)) -> Vec<f64> {
    // well separated walls: jittered equal spacing
    let step = (hi - lo) / n as f64;
    (0..n).map(|i| lo + step * (i as f64 + rng.gen_range(0.2..0.8))).collect()
}

fn finite_chain(geometry: Geometry, positions: Vec<f64>, lambdas: Vec<f64>) -> DeltaChain {
    DeltaChain::with_couplings(geometry, positions, Couplings::Finite(lambdas), UnitSystem::natural()).unwrap()
}

#[test]
fn brute_force_linear_system_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in cases() {
        for &n in &[1usize, 2, 3, 5] {
            for _ in 0..5 {
                let a = random_positions(&mut rng, n, case.span);
                let lambdas: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
                let chain = finite_chain(case.geometry, a.clone(), lambdas.clone());
                let g0 = |x: f64, y: f64| case.g0.eval(x, y, case.param).unwrap();
                let w: Vec<f64> = a.iter().zip(&lambdas).map(|(&p, l)| case.g0.weight(p).unwrap() * l).collect();
                let x = rng.gen_range(case.span.0..case.span.1);
                let xp = rng.gen_range(case.span.0..case.span.1);

                // g(a_i) + Σ_j g0(a_i, a_j) w_j g(a_j) = g0(a_i, x')
                let sys: Vec<Vec<f64>> = (0..n)
                    .map(|i| (0..n).map(|j| f64::from(u8::from(i == j)) + g0(a[i], a[j]) * w[j]).collect())
                    .collect();
                let rhs: Vec<f64> = a.iter().map(|&ai| g0(ai, xp)).collect();
                let ga = gauss_jordan(sys, rhs);
                let oracle = g0(x, xp) - (0..n).map(|j| g0(x, a[j]) * w[j] * ga[j]).sum::<f64>();

                let got = greens_finite(&chain, case.g0.as_ref(), x, xp, case.param).unwrap();
                assert!(
                    (got - oracle).abs() <= 1e-10 * oracle.abs().max(1e-300),
                    "{:?} n={n}: {got} vs {oracle}",
                    case.geometry
                );
                let swapped = greens_finite(&chain, case.g0.as_ref(), xp, x, case.param).unwrap();
                assert!((got - swapped).abs() <= 1e-12 * got.abs(), "symmetry {:?}", case.geometry);
            }
        }
    }
}

#[test]
fn push_through_orders_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in cases() {
        let n = 4;
        let a = random_positions(&mut rng, n, case.span);
        let lambdas: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
        let chain = finite_chain(case.geometry, a.clone(), lambdas.clone());
        let g0m = boundary_matrix(&chain, case.g0.as_ref(), case.param).unwrap().entries;
        let w: Vec<f64> = a.iter().zip(&lambdas).map(|(&p, l)| case.g0.weight(p).unwrap() * l).collect();
        let (x, xp) = (rng.gen_range(case.span.0..case.span.1), rng.gen_range(case.span.0..case.span.1));
        let u: Vec<f64> = a.iter().map(|&p| case.g0.eval(x, p, case.param).unwrap()).collect();
        let v: Vec<f64> = a.iter().map(|&p| case.g0.eval(p, xp, case.param).unwrap()).collect();

        // uᵀ W (I + G0 W)⁻¹ v
        let mut right = Matrix::identity(n);
        let mut left = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                right[(i, j)] += g0m[(i, j)] * w[j];
                left[(i, j)] += w[i] * g0m[(i, j)];
            }
        }
        let y = lu(&right).unwrap().solve(&v);
        let s1: f64 = (0..n).map(|i| u[i] * w[i] * y[i]).sum();
        // uᵀ (I + W G0)⁻¹ W v
        let wv: Vec<f64> = (0..n).map(|i| w[i] * v[i]).collect();
        let z = lu(&left).unwrap().solve(&wv);
        let s2: f64 = (0..n).map(|i| u[i] * z[i]).sum();
        assert!((s1 - s2).abs() <= 1e-12 * s1.abs().max(s2.abs()), "{:?}: {s1} vs {s2}", case.geometry);
    }
}

#[test]
fn finite_coupling_converges_to_strong_as_one_over_lambda() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for case in cases() {
        let a = random_positions(&mut rng, 3, case.span);
        let strong = DeltaChain::impenetrable(case.geometry, a.clone(), UnitSystem::natural()).unwrap();
        let pts: Vec<(f64, f64)> = (0..10)
            .map(|_| (rng.gen_range(case.span.0..case.span.1), rng.gen_range(case.span.0..case.span.1)))
            .collect();
        let mut consts = Vec::new();
        let mut prev = f64::INFINITY;
        for lam in [1e2, 1e4, 1e6] {
            let chain = finite_chain(case.geometry, a.clone(), vec![lam; 3]);
            let err = pts
                .iter()
                .map(|&(x, xp)| {
                    let f = greens_finite(&chain, case.g0.as_ref(), x, xp, case.param).unwrap();
                    let s = greens_strong(&strong, case.g0.as_ref(), x, xp, case.param).unwrap();
                    (f - s).abs()
                })
                .fold(0.0, f64::max);
            assert!(err < prev, "{:?}: not decreasing at λ={lam}", case.geometry);
            prev = err;
            consts.push(err * lam);
        }
        let (cmin, cmax) = consts.iter().fold((f64::INFINITY, 0f64), |(a, b), &c| (a.min(c), b.max(c)));
        // the O(1/λ²) remainder is still visible at λ = 100
        assert!(cmax / cmin < 2.0, "{:?}: C = {consts:?}", case.geometry);
        assert!((consts[1] / consts[2] - 1.0).abs() < 0.05, "{:?}: C = {consts:?}", case.geometry);
    }
}

#[test]
fn strong_coupling_vanishes_on_walls() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for case in cases() {
        let a = random_positions(&mut rng, 3, case.span);
        let chain = DeltaChain::impenetrable(case.geometry, a.clone(), UnitSystem::natural()).unwrap();
        for _ in 0..20 {
            let xp = rng.gen_range(case.span.0..case.span.1);
            let scale = (0..50)
                .map(|i| {
                    let x = case.span.0 + (case.span.1 - case.span.0) * (i as f64 + 0.5) / 50.0;
                    greens_strong(&chain, case.g0.as_ref(), x, xp, case.param).unwrap().abs()
                })
                .fold(0.0, f64::max);
            for &ai in &a {
                let g = greens_strong(&chain, case.g0.as_ref(), ai, xp, case.param).unwrap();
                assert!(g.abs() <= 1e-10 * scale, "{:?}: g(a)={g} scale={scale}", case.geometry);
            }
        }
    }
}

#[test]
fn derivative_jump_equals_coupling_times_value() {
    const H: f64 = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for case in cases() {
        let a = random_positions(&mut rng, 3, case.span);
        let lambdas = vec![0.7, 2.5, 5.0];
        let chain = finite_chain(case.geometry, a.clone(), lambdas.clone());
        let xp = a[1] + 0.37 * (a[2] - a[1]);
        let g = |x: f64| greens_finite(&chain, case.g0.as_ref(), x, xp, case.param).unwrap();
        let on_walls = wall_values(&chain, case.g0.as_ref(), xp, case.param).unwrap();
        for (i, &ai) in a.iter().enumerate() {
            let right = (-3.0 * g(ai) + 4.0 * g(ai + H) - g(ai + 2.0 * H)) / (2.0 * H);
            let left = (3.0 * g(ai) - 4.0 * g(ai - H) + g(ai - 2.0 * H)) / (2.0 * H);
            let want = lambdas[i] * on_walls[i];
            assert!((g(ai) - on_walls[i]).abs() <= 1e-12 * on_walls[i].abs());
            assert!(
                (right - left - want).abs() <= 1e-4 * want.abs().max(1.0),
                "{:?} wall {i}: jump {} vs {want}",
                case.geometry,
                right - left
            );
        }
    }
}

fn sign_change_brackets(f: impl Fn(f64) -> i8, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let s: Vec<i8> = xs.iter().map(|&x| f(x)).collect();
    (0..n).filter(|&i| s[i] * s[i + 1] < 0).map(|i| (xs[i], xs[i + 1])).collect()
}

#[test]
fn rescaling_preserves_char_brackets() {
    let c = 7.3f64;
    let units = UnitSystem::natural();
    let osc = OscillatorGreens::centered_in_box(units, 1.0);
    let scaled = CustomGreens::new(move |x, y, v| Ok(c * osc.eval(x, y, v)?));
    for positions in [vec![0.0, 1.0], vec![-0.2, 0.3, 1.1]] {
        let n = positions.len();
        let chain = DeltaChain::impenetrable(Geometry::Oscillator, positions, units).unwrap();
        // grid offset keeps samples off the integer poles of Γ(-v)
        let (lo, hi, steps) = (0.013, 60.013, 3000);
        let base = sign_change_brackets(|v| char_func(&chain, &osc, v).unwrap().sign(), lo, hi, steps);
        let resc = sign_change_brackets(|v| char_func(&chain, &scaled, v).unwrap().sign(), lo, hi, steps);
        assert!(!base.is_empty());
        assert_eq!(base, resc);
        for v in [0.5, 4.45, 17.2] {
            let d0 = char_func(&chain, &osc, v).unwrap();
            let d1 = char_func(&chain, &scaled, v).unwrap();
            assert_eq!(d0.sign(), d1.sign());
            assert!((d1.log_mag() - d0.log_mag() - n as f64 * c.ln()).abs() < 1e-10);
        }
    }
}
