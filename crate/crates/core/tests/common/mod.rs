#![allow(dead_code)]

use fgpolar::{FiniteGroup, PauliSpec};

/// The five worked examples in order: complex 1- and 2-qubit, real 1- and
/// 2-qubit, two-qutrit.
pub fn example_specs() -> [PauliSpec; 5] {
    [
        PauliSpec::complex_qubits(1),
        PauliSpec::complex_qubits(2),
        PauliSpec::real_qubits(1),
        PauliSpec::real_qubits(2),
        PauliSpec::qudits(3, 2),
    ]
}

pub fn example_groups() -> Vec<(PauliSpec, FiniteGroup)> {
    example_specs()
        .into_iter()
        .map(|s| (s, s.build_group().unwrap()))
        .collect()
}

/// Central extension of GF(2)^4 by Z2 with cocycle
/// `b(v, w) = v1 w2 + v3 w4 + v3 w3 + v4 w4`, so that squares realize the
/// elliptic form `x1 x2 + x3 x4 + x3 + x4`. Element `(v, c)` has id
/// `16 c + index(v)` with `v1` most significant.
pub fn elliptic_group() -> FiniteGroup {
    let bits = |i: usize| [(i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1];
    let beta = |a: usize, b: usize| {
        let (v, w) = (bits(a), bits(b));
        (v[0] * w[1] + v[2] * w[3] + v[2] * w[2] + v[3] * w[3]) % 2
    };
    FiniteGroup::from_fn(
        32,
        |x, y| {
            let (v, c) = (x % 16, x / 16);
            let (w, d) = (y % 16, y / 16);
            ((c + d + beta(v, w)) % 2) * 16 + (v ^ w)
        },
        None,
    )
    .unwrap()
}

/// Quaternion units `1, -1, i, -i, j, -j, k, -k` as integer 4-vectors.
pub fn quaternion_units() -> Vec<[i32; 4]> {
    let mut out = Vec::new();
    for axis in 0..4 {
        for sign in [1, -1] {
            let mut q = [0; 4];
            q[axis] = sign;
            out.push(q);
        }
    }
    out
}

pub fn quaternion_mul(a: [i32; 4], b: [i32; 4]) -> [i32; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// Hand-entered Cayley table of the quaternion group in the order above.
pub const QUATERNION_DOC: &str = r#"{
  "kind": "cayley_table",
  "order": 8,
  "table": [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 1, 0, 6, 7, 5, 4],
    [3, 2, 0, 1, 7, 6, 4, 5],
    [4, 5, 7, 6, 1, 0, 2, 3],
    [5, 4, 6, 7, 0, 1, 3, 2],
    [6, 7, 4, 5, 3, 2, 1, 0],
    [7, 6, 5, 4, 2, 3, 0, 1]
  ],
  "labels": ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
}"#;
