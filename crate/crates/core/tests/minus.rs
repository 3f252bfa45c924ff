use fourier_eigen::minus::{lambda_reduction_residual, minus_params, reduce_lambda_powers, solve_minus, solve_minus_family, MinusSolution};
use fourier_eigen::poly::Poly;
use fourier_eigen::Exp;

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn table() -> Vec<(Vec<i64>, [Poly; 3])> {
    vec![
        (vec![4, 28], [p(&[2]), p(&[1]), p(&[])]),
        (vec![52, 76], [p(&[120 * 384, 120 * 7]), p(&[171776, 63]), p(&[91392])]),
        (vec![24], [p(&[]), p(&[]), p(&[1])]),
        (vec![48, 72], [p(&[840]), p(&[514304, -840]), p(&[131584, 63])]),
        (vec![20, 44], [p(&[6144]), p(&[8192, 5]), p(&[-1280])]),
        (vec![68, 92], [p(&[53760 * 512, 53760 * 3]), p(&[117014528, 202688, 33]), p(&[-256 * 88256, -256 * 33])]),
        (vec![16, 40], [p(&[1536]), p(&[-9856, 5]), p(&[640])]),
        (vec![64, 88], [p(&[215040 * 128, 215040 * 3]), p(&[-1267400704, -26752, 231]), p(&[128 * 1002752, 128 * 231])]),
        (vec![12], [p(&[]), p(&[768, 1]), p(&[-256])]),
        (vec![36, 60], [p(&[7864320]), p(&[-3670016, -14080, -7]), p(&[256 * 8704, 256 * 7])]),
        (vec![8], [p(&[]), p(&[1408, 1]), p(&[-256])]),
        (vec![32, 56], [p(&[55050240]), p(&[89587712, -19456, -35]), p(&[256 * -29824, 256 * 35])]),
    ]
}

fn flat(polys: [&Poly; 3]) -> Vec<rug::Rational> {
    polys.iter().flat_map(|x| x.0.iter().cloned()).collect()
}

fn matches(s: &MinusSolution, want: &[Poly; 3]) -> bool {
    [&s.x, &s.y, &s.z].iter().zip(want).all(|(a, b)| a.0.len() == b.0.len())
        && Poly(flat([&s.x, &s.y, &s.z])).proportional(&Poly(flat([&want[0], &want[1], &want[2]])))
}

#[test]
fn reproduces_polynomial_table() {
    for (dims, want) in table() {
        for d in dims {
            let s = solve_minus(d, 6).unwrap();
            assert!(matches(&s, &want), "d={d}: got {} | {} | {}", s.x.display("w"), s.y.display("w"), s.z.display("w"));
        }
    }
}

#[test]
fn parameters() {
    let p = minus_params(8).unwrap();
    assert_eq!((p.ell, p.k, p.n, p.n_minus), (1, 5, -1, 1));
    let p = minus_params(24).unwrap();
    assert_eq!((p.ell, p.k, p.n, p.n_minus), (1, 1, 0, 2));
    let p = minus_params(4).unwrap();
    assert_eq!((p.ell, p.k, p.n, p.n_minus), (0, 0, 0, 1));
}

#[test]
fn optimal_order_is_tight_and_half_integral() {
    for d in (4..=96).step_by(4) {
        let s = solve_minus(d, 8).unwrap();
        let p = s.params;
        assert!(s.psi_s.integral_part().is_zero(), "d={d}");
        assert_eq!(s.psi_s.valuation().order(), Some(Exp::halves(4 * p.n + p.b_k - 2 * p.ell)), "d={d}");
    }
}

#[test]
fn extra_freedom() {
    for d in [4, 16, 20, 32, 36, 48] {
        assert_eq!(solve_minus_family(d, 4).unwrap().len(), 2, "d={d}");
    }
    assert_eq!(solve_minus_family(8, 4).unwrap().len(), 1);
}

#[test]
fn lambda_reduction() {
    let one = Poly::from_ints(&[1]);
    let zero = Poly::from_ints(&[]);
    let mut l6 = vec![zero.clone(); 6];
    l6.push(one.clone());
    let r = reduce_lambda_powers(&l6);
    // 3L^5 - (6 - J) L^4 + (7 - 2J) L^3 - (6 - J) L^2 + 3 L - 1 with J = j/256
    assert_eq!(r[5], Poly::from_ints(&[3]));
    assert_eq!(r[0], Poly::from_ints(&[-1]));
    assert_eq!(r[4].coeff(1), rug::Rational::from((1, 256)));
    let mut l2 = vec![zero.clone(); 2];
    l2.push(one.clone());
    assert_eq!(reduce_lambda_powers(&l2)[2], one);
    let mut l9 = vec![zero; 9];
    l9.push(one);
    assert!(lambda_reduction_residual(&l9, 12).is_zero());
}
