use fourier_eigen::plus::{apply_origin_constraint, plus_params, solve_plus, solve_plus_family, PlusSolution};
use fourier_eigen::poly::Poly;
use fourier_eigen::Exp;

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

// coefficients lowest degree first
fn table() -> Vec<(Vec<i64>, [Poly; 3])> {
    vec![
        (vec![24], [p(&[-3528, 1]), p(&[1]), p(&[1800, 1])]),
        (vec![48, 72], [p(&[-475793136, -1840638, 175]), p(&[497922, 175]), p(&[111078000, 2534082, 175])]),
        (vec![20], [p(&[-1008, 1]), p(&[-1368, 1]), p(&[1])]),
        (vec![44, 68], [p(&[-10456992, -167286, 25]), p(&[-41044752, -18966, 25]), p(&[172554, 25])]),
        (vec![16, 40], [p(&[-5628, 1]), p(&[420, 1]), p(&[4740, 1])]),
        (vec![64, 88], [p(&[-147949620, -277373, 21]), p(&[2942940, 104155, 21]), p(&[62398380, 449395, 21])]),
        (vec![12, 36], [p(&[-2548, 1]), p(&[-1588, 1]), p(&[1100, 1])]),
        (vec![60, 84], [p(&[-13216476, -63953, 7]), p(&[-26138316, 3079, 7]), p(&[2838660, 82207, 7])]),
        (vec![8], [p(&[-1728, 1]), p(&[1]), p(&[1])]),
        (vec![32, 56], [p(&[-3302208, -39879, 5]), p(&[6741, 5]), p(&[44721, 5])]),
        (vec![4], [p(&[1]), p(&[-864, 1]), p(&[1])]),
        (vec![28, 52], [p(&[-4473, 1]), p(&[-453600, -1413, 1]), p(&[3375, 1])]),
    ]
}

fn same_up_to_scalar(s: &PlusSolution, want: &[Poly; 3]) -> bool {
    let got: Vec<_> = [&s.p, &s.q, &s.r].iter().flat_map(|x| x.0.iter().cloned()).collect();
    let exp: Vec<_> = want.iter().flat_map(|x| x.0.iter().cloned()).collect();
    got.len() == exp.len() && Poly(got).proportional(&Poly(exp))
}

#[test]
fn reproduces_polynomial_table() {
    for (dims, want) in table() {
        for d in dims {
            let s = solve_plus(d, 6).unwrap();
            assert!(same_up_to_scalar(&s, &want), "d={d}: got {} | {} | {}", s.p.display("w"), s.q.display("w"), s.r.display("w"));
        }
    }
}

#[test]
fn solution_depends_on_k_and_n_only() {
    let a = solve_plus(48, 4).unwrap();
    let b = solve_plus(72, 4).unwrap();
    assert_eq!((a.p, a.q, a.r), (b.p, b.q, b.r));
}

#[test]
fn orders_match_parameters() {
    for d in (4..=96).step_by(4) {
        let s = solve_plus(d, 8).unwrap();
        let pr = s.params;
        assert_eq!(pr.n + pr.ell, pr.n_plus);
        let g = s.g_series();
        assert_ne!(g.coeff(Exp::int(-pr.n_plus + 1)), 0, "d={d}");
        assert_eq!(g.coeff(Exp::int(-pr.n_plus)), 0, "d={d}");
        let phi_delta = s.phi.valuation().order().unwrap();
        assert_eq!(phi_delta, Exp::int(2 * pr.n + pr.a_k - 1 - pr.ell), "d={d}");
    }
}

#[test]
fn origin_constraint() {
    assert!(apply_origin_constraint(8, 4).is_err());
    for d in [12, 16, 28, 32, 44, 48, 60] {
        assert!(plus_params(d).unwrap().extra_dof);
        let fam = solve_plus_family(d, 4).unwrap();
        assert_eq!(fam.len(), 2);
        let s = apply_origin_constraint(d, 4).unwrap();
        assert_eq!(s.g_series().coeff(Exp::ZERO), 0, "d={d}");
    }
}
