//! Exact kernels of integer matrices by fraction-free elimination.

use rug::{Integer, Rational};

/// Row echelon form of an integer matrix; rows are kept primitive.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Integer>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn make_primitive(row: &mut [Integer]) {
    let mut g = Integer::new();
    for c in row.iter() {
        g.gcd_mut(c);
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for c in row.iter_mut() {
            c.div_exact_mut(&g);
        }
    }
}

pub fn echelon(matrix: &[Vec<Integer>], ncols: usize) -> Echelon {
    let mut m: Vec<Vec<Integer>> = matrix.to_vec();
    for row in &m {
        assert_eq!(row.len(), ncols, "ragged matrix");
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).filter(|&i| m[i][c] != 0).min_by_key(|&i| m[i][c].significant_bits()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                let v = Integer::from(&prow[c] * &row[j]) - Integer::from(&f * &prow[j]);
                row[j] = v;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Echelon { rows: m, pivots, ncols }
}

/// Basis of the rational kernel, each vector scaled to a primitive integer vector.
pub fn nullspace(matrix: &[Vec<Integer>], ncols: usize) -> Vec<Vec<Integer>> {
    let e = echelon(matrix, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = vec![Rational::new(); ncols];
        x[f] = Rational::from(1);
        for (k, &p) in e.pivots.iter().enumerate().rev() {
            let row = &e.rows[k];
            let mut acc = Rational::new();
            for j in p + 1..ncols {
                if row[j] != 0 && x[j] != 0 {
                    acc += Rational::from(&x[j] * &row[j]);
                }
            }
            x[p] = -acc / &row[p];
        }
        basis.push(primitive_integer(&x));
    }
    basis
}

/// Clear denominators and common factors; the sign is left unchanged.
pub fn primitive_integer(x: &[Rational]) -> Vec<Integer> {
    let mut l = Integer::from(1);
    for v in x {
        l.lcm_mut(v.denom());
    }
    let mut out: Vec<Integer> = x
        .iter()
        .map(|v| Integer::from(v.numer() * Integer::from(&l / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

pub fn mat_vec(matrix: &[Vec<Integer>], x: &[Integer]) -> Vec<Integer> {
    matrix
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| Integer::from(a * b)).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Integer>> {
        rows.iter().map(|r| r.iter().map(|&v| Integer::from(v)).collect()).collect()
    }

    #[test]
    fn small_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert!(nullspace(&a, 2).is_empty());
    }
}
