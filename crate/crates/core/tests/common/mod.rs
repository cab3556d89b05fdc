//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own arithmetic; tables are read out as plain integers and
//! everything is recomputed from scratch.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use triplets::algebra::StructureTable;

/// Cells of an integral table as dense integer vectors.
pub fn dense_table(t: &StructureTable) -> Vec<Vec<Vec<i64>>> {
    let n = t.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = vec![0i64; n];
                    for (c, k) in t.cell(i, j).terms() {
                        assert!(c.is_integer(), "non-integral structure constant");
                        v[*k] = c.to_integer().to_i64().unwrap();
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Searches for `b_i -> s_i b'_{p(i)}` (unit fixed) carrying the product of
/// `a` onto the product of `b`. Only meaningful for tables whose cells are
/// signed basis elements.
pub fn signed_relabeling(a: &StructureTable, b: &StructureTable) -> Option<(Vec<usize>, Vec<i64>)> {
    let n = a.dim();
    if b.dim() != n {
        return None;
    }
    let (ta, tb) = (dense_table(a), dense_table(b));
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm[0] == 0 {
            for mask in 0..1u32 << (n - 1) {
                let sign: Vec<i64> = (0..n).map(|i| if i > 0 && (mask >> (i - 1)) & 1 == 1 { -1 } else { 1 }).collect();
                if is_homomorphism(&ta, &tb, &perm, &sign) {
                    return Some((perm, sign));
                }
            }
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn is_homomorphism(ta: &[Vec<Vec<i64>>], tb: &[Vec<Vec<i64>>], perm: &[usize], sign: &[i64]) -> bool {
    let n = ta.len();
    for i in 0..n {
        for j in 0..n {
            // image of b_i b_j
            let mut lhs = vec![0i64; n];
            for (k, c) in ta[i][j].iter().enumerate() {
                lhs[perm[k]] += c * sign[k];
            }
            // product of the images
            let rhs: Vec<i64> = tb[perm[i]][perm[j]].iter().map(|c| c * sign[i] * sign[j]).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Hamilton's formula on coordinates `(1, i, j, k)`.
pub fn hamilton(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

/// Recursive Cayley-Dickson product with parameter -1 on `2^level` coordinates,
/// pairs laid out as `(first half, second half)`.
pub fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    if x.len() == 1 {
        return vec![x[0] * y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    ac.iter().zip(&db).map(|(p, q)| p - q).chain(da.iter().zip(&bc).map(|(p, q)| p + q)).collect()
}

pub fn cd_conj(x: &[i64]) -> Vec<i64> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = cd_conj(&x[..h]);
    out.extend(x[h..].iter().map(|v| -v));
    out
}

pub fn unit_vector(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

/// Integer square matrices for the Clifford generators: `e_k` is
/// `Z (x) .. (x) Z (x) G (x) 1 (x) .. (x) 1` with `G` squaring to `squares[k]`.
pub struct CliffordMatrices {
    pub size: usize,
    pub gens: Vec<Vec<i64>>,
}

impl CliffordMatrices {
    pub fn new(squares: &[i64]) -> Self {
        let id = vec![1, 0, 0, 1];
        let z = vec![1, 0, 0, -1];
        let x = vec![0, 1, 1, 0];
        let j = vec![0, 1, -1, 0];
        let n = squares.len();
        let gens = (0..n)
            .map(|k| {
                let mut m = vec![1i64];
                let mut size = 1;
                for pos in 0..n {
                    let f = if pos < k {
                        &z
                    } else if pos == k {
                        if squares[k] == 1 {
                            &x
                        } else {
                            &j
                        }
                    } else {
                        &id
                    };
                    m = kron(&m, size, f, 2);
                    size *= 2;
                }
                m
            })
            .collect();
        Self { size: 1 << n, gens }
    }

    /// `sign * e_{w1} e_{w2} ..` for a 1-based word.
    pub fn word(&self, sign: i64, word: &[usize]) -> Vec<i64> {
        let mut m = identity(self.size);
        for &k in word {
            m = matmul(&m, &self.gens[k - 1], self.size);
        }
        m.iter().map(|v| v * sign).collect()
    }
}

pub fn identity(n: usize) -> Vec<i64> {
    (0..n * n).map(|t| i64::from(t / n == t % n)).collect()
}

pub fn kron(a: &[i64], na: usize, b: &[i64], nb: usize) -> Vec<i64> {
    let n = na * nb;
    let mut out = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = a[(r / nb) * na + c / nb] * b[(r % nb) * nb + c % nb];
        }
    }
    out
}

pub fn matmul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x != 0 {
                for c in 0..n {
                    out[r * n + c] += x * b[k * n + c];
                }
            }
        }
    }
    out
}

/// Determinant over F2 by cofactor expansion along the first row.
pub fn det_f2(m: &[Vec<u8>]) -> u8 {
    let n = m.len();
    if n == 1 {
        return m[0][0] & 1;
    }
    let mut acc = 0;
    for col in 0..n {
        if m[0][col] & 1 == 0 {
            continue;
        }
        let minor: Vec<Vec<u8>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, &v)| v).collect())
            .collect();
        acc ^= det_f2(&minor);
    }
    acc
}

/// Rank over Q by plain Gaussian elimination on a copy.
pub fn rank_q(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        let pivot: Vec<BigRational> = m[rank].iter().map(|v| v * &inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn sum_of_squares(v: &[BigRational]) -> BigRational {
    v.iter().fold(BigRational::zero(), |acc, x| acc + x * x)
}

pub fn abs_sign(v: &BigRational) -> i64 {
    if v.is_negative() {
        -1
    } else {
        1
    }
}

/// Parity matrix `<s_a, s_b> mod 2` of a list of bit vectors.
pub fn parity_matrix(grades: &[Vec<u8>]) -> Vec<Vec<u8>> {
    grades
        .iter()
        .map(|a| grades.iter().map(|b| a.iter().zip(b).map(|(x, y)| x & y).sum::<u8>() & 1).collect())
        .collect()
}

/// Grades of `1, i, j, k` in the triple degree.
pub fn triple_degree() -> Vec<Vec<u8>> {
    vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triplets")).args(args).output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// A fresh path under the system temp directory.
pub fn scratch_file(tag: &str) -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!("triplets-{}-{tag}-{n}.json", std::process::id()))
}
