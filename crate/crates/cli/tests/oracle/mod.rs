//! Brute-force reference computations used by the acceptance suite. Nothing
//! here calls into the library's arithmetic.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_complex::Complex64;

pub type Terms = BTreeMap<Vec<i64>, Complex64>;

pub fn pair(tau: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..u.len() {
        for j in 0..v.len() {
            s += u[i] * tau[i][j] * v[j];
        }
    }
    s
}

/// Direct expansion of `(Σ a_u W_u)(Σ b_v W_v)` with `W_u W_v = e^{-iℏτ(u,v)} W_{u+v}`.
pub fn product(tau: &[Vec<i64>], hbar: f64, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (u, x) in a {
        for (v, y) in b {
            let phase = Complex64::from_polar(1.0, -hbar * pair(tau, u, v) as f64);
            let w: Vec<i64> = u.iter().zip(v).map(|(p, q)| p + q).collect();
            *out.entry(w).or_default() += x * y * phase;
        }
    }
    out
}

pub fn star(a: &Terms) -> Terms {
    a.iter()
        .map(|(u, c)| (u.iter().map(|x| -x).collect(), c.conj()))
        .collect()
}

pub fn distance(a: &Terms, b: &Terms) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).norm())
        .fold(0.0, f64::max)
}

/// `a · b` where `b` has `inner` rows and `cols` columns (either may be zero).
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<i64>], rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect()
}

/// Cofactor expansion along the first row.
pub fn det3(m: &[[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Paper Gram matrix `[[1,1,1],[1,1,e^{iℏ}],[1,e^{-iℏ},1]]`.
pub fn paper_gram(hbar: f64) -> [[Complex64; 3]; 3] {
    let one = Complex64::new(1.0, 0.0);
    let e = Complex64::from_polar(1.0, hbar);
    [[one, one, one], [one, one, e], [one, e.conj(), one]]
}

/// Breadth-first closure of `starts` under `S`, `S^{-1}`, `T`, `T^{-1}` acting
/// on column vectors, up to `depth` letters. Maps each vector reached to the
/// start it came from.
pub fn bfs_orbit(starts: &[(i64, i64)], depth: usize) -> HashMap<(i64, i64), (i64, i64)> {
    let moves: [fn((i64, i64)) -> (i64, i64); 4] = [
        |(a, b)| (-b, a),
        |(a, b)| (b, -a),
        |(a, b)| (a + b, b),
        |(a, b)| (a - b, b),
    ];
    let mut seen = HashMap::new();
    let mut queue = VecDeque::new();
    for &s in starts {
        seen.insert(s, s);
        queue.push_back((s, s, 0usize));
    }
    while let Some((v, origin, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for m in moves {
            let w = m(v);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                e.insert(origin);
                queue.push_back((w, origin, d + 1));
            }
        }
    }
    seen
}

/// Jacobi rotations on the real `2n × 2n` embedding of a Hermitian matrix;
/// each eigenvalue of the original appears twice.
pub fn hermitian_eigenvalues(m: &[Vec<Complex64>]) -> Vec<f64> {
    let n = m.len();
    let size = 2 * n;
    let mut a = vec![vec![0.0; size]; size];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = m[i][j].re;
            a[i + n][j + n] = m[i][j].re;
            a[i][j + n] = -m[i][j].im;
            a[i + n][j] = m[i][j].im;
        }
    }
    for _ in 0..100 {
        let off: f64 = (0..size)
            .flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..size {
            for q in p + 1..size {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..size {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..size {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..size).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig.into_iter().step_by(2).collect()
}
