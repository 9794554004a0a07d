//! Integer kernels of small integer matrices.

/// A basis of `{x ∈ Z^cols : A x = 0}`, obtained by unimodular column
/// operations that bring `A` to echelon form.
pub fn integer_kernel(a: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    let mut a: Vec<Vec<i128>> = a.to_vec();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    // v is stored row-major; column j of v is v[·][j]
    let col_op = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for row in m.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let swap = |m: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut pivot = 0;
    for r in 0..a.len() {
        if pivot == cols {
            break;
        }
        loop {
            let smallest = (pivot..cols)
                .filter(|&j| a[r][j] != 0)
                .min_by_key(|&j| a[r][j].abs());
            let Some(s) = smallest else { break };
            swap(&mut a, pivot, s);
            swap(&mut v, pivot, s);
            let mut done = true;
            for j in (pivot + 1)..cols {
                if a[r][j] != 0 {
                    let q = a[r][j].div_euclid(a[r][pivot]);
                    col_op(&mut a, j, pivot, q);
                    col_op(&mut v, j, pivot, q);
                    done &= a[r][j] == 0;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    (pivot..cols)
        .map(|j| v.iter().map(|row| row[j]).collect())
        .collect()
}

/// Row Hermite form of the lattice spanned by `vectors`, zero rows removed.
pub fn hermite_basis(vectors: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let Some(dim) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<i128>> = vectors.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    let mut top = 0;
    for c in 0..dim {
        if top == rows.len() {
            break;
        }
        loop {
            let smallest = (top..rows.len())
                .filter(|&i| rows[i][c] != 0)
                .min_by_key(|&i| rows[i][c].abs());
            let Some(s) = smallest else { break };
            rows.swap(top, s);
            let mut done = true;
            for i in (top + 1)..rows.len() {
                if rows[i][c] != 0 {
                    let q = rows[i][c].div_euclid(rows[top][c]);
                    for k in 0..dim {
                        rows[i][k] -= q * rows[top][k];
                    }
                    done &= rows[i][c] == 0;
                }
            }
            if done {
                if rows[top][c] < 0 {
                    rows[top].iter_mut().for_each(|x| *x = -*x);
                }
                let p = rows[top][c];
                for i in 0..top {
                    let q = rows[i][c].div_euclid(p);
                    if q != 0 {
                        for k in 0..dim {
                            rows[i][k] -= q * rows[top][k];
                        }
                    }
                }
                top += 1;
                break;
            }
        }
    }
    rows.truncate(top);
    rows
}

/// A basis of `{x : A x = 0, B x ≡ 0 (mod moduli)}` where row `i` of `B` is
/// taken modulo `moduli[i]`.
pub fn relation_lattice(
    equalities: &[Vec<i128>],
    congruences: &[(Vec<i128>, i128)],
    cols: usize,
) -> Vec<Vec<i128>> {
    let total = cols + congruences.len();
    let mut rows: Vec<Vec<i128>> = equalities
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(total, 0);
            r
        })
        .collect();
    for (i, (r, modulus)) in congruences.iter().enumerate() {
        let mut r = r.clone();
        r.resize(total, 0);
        r[cols + i] = -modulus;
        rows.push(r);
    }
    let kernel = integer_kernel(&rows, total);
    hermite_basis(kernel.into_iter().map(|mut k| {
        k.truncate(cols);
        k
    }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(a: &[Vec<i128>], x: &[i128]) -> Vec<i128> {
        a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&[vec![2, 3, 5]], 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert_eq!(apply(&[vec![2, 3, 5]], x), vec![0]);
        }
    }

    #[test]
    fn congruence_lattice() {
        // x ≡ 0 mod 2 in one variable
        let b = relation_lattice(&[], &[(vec![1], 2)], 1);
        assert_eq!(b, vec![vec![2]]);
        // x + y = 0 and x ≡ 0 mod 3
        let b = relation_lattice(&[vec![1, 1]], &[(vec![1, 0], 3)], 2);
        assert_eq!(b, vec![vec![3, -3]]);
    }

    #[test]
    fn empty_system_gives_standard_basis() {
        let b = relation_lattice(&[], &[], 3);
        assert_eq!(b, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_in_kernel_and_full_rank(
            rows in prop::collection::vec(prop::collection::vec(-6i128..=6, 5), 0..4)
        ) {
            let k = integer_kernel(&rows, 5);
            for x in &k {
                prop_assert!(apply(&rows, x).iter().all(|&y| y == 0));
            }
            // rank-nullity over Q: the echelon form is also a valid rank count
            let h = hermite_basis(rows.clone());
            prop_assert_eq!(k.len() + h.len(), 5);
        }

        #[test]
        fn kernel_is_saturated(
            rows in prop::collection::vec(prop::collection::vec(-4i128..=4, 4), 1..3),
            x in prop::collection::vec(-3i128..=3, 4),
        ) {
            // any integer kernel vector is an integer combination of the basis
            if apply(&rows, &x).iter().all(|&y| y == 0) {
                let k = integer_kernel(&rows, 4);
                let mut with_x = k.clone();
                with_x.push(x);
                let before = hermite_basis(k);
                let after = hermite_basis(with_x);
                prop_assert_eq!(before, after);
            }
        }
    }
}
