//! The octonion multiplication table, its index-septuple structure, and the
//! sign patterns of the ternary bracket on aligned basis triples.
//!
//! The signed table below was computed independently (Fraction-based
//! Cayley–Dickson prototype) and is frozen; `build_octonions` must reproduce
//! it bit for bit.

use naryd_core::algebra::basis_vector;
use naryd_core::octonion::{build_m8, build_octonions};
use naryd_core::rational::Rational;

/// `e_i · e_j = sign · e_(|v|−1)` encoded as `v = ±(index+1)`.
const TABLE: [[i32; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, 4, -3, 6, -5, -8, 7],
    [3, -4, -1, 2, 7, 8, -5, -6],
    [4, 3, -2, -1, 8, -7, 6, -5],
    [5, -6, -7, -8, -1, 2, 3, 4],
    [6, 5, -8, 7, -2, -1, -4, 3],
    [7, 8, 5, -6, -3, 4, -1, -2],
    [8, -7, 6, 5, -4, -3, 2, -1],
];

#[test]
fn multiplication_table_matches_the_frozen_snapshot() {
    let o = build_octonions();
    let got = o.signed_table();
    for i in 0..8 {
        for j in 0..8 {
            let v = TABLE[i][j];
            let expect = ((v.unsigned_abs() as usize) - 1, v.signum() as i8);
            assert_eq!(got[i][j], expect, "entry ({i}, {j})");
        }
    }
}

/// `e_x · e_y = +e_z` according to the frozen table?
fn is_product(x: usize, y: usize, z: usize) -> bool {
    TABLE[x][y] == z as i32 + 1
}

/// All 21 alignment relations of a septuple (i; j,k,l,m,s,t).
fn septuple_holds(i: usize, p: &[usize; 6]) -> bool {
    let [j, k, l, m, s, t] = *p;
    let rel: [(usize, usize, usize); 21] = [
        (i, j, k),
        (i, l, m),
        (i, s, t),
        (j, s, m),
        (j, k, i),
        (j, t, l),
        (k, i, j),
        (k, m, t),
        (k, s, l),
        (l, m, i),
        (l, k, s),
        (l, j, t),
        (m, i, l),
        (m, t, k),
        (m, j, s),
        (s, l, k),
        (s, t, i),
        (s, m, j),
        (t, i, s),
        (t, k, m),
        (t, l, j),
    ];
    rel.iter().all(|&(prod, x, y)| is_product(x, y, prod))
}

fn permutations(values: &[usize]) -> Vec<[usize; 6]> {
    fn rec(rest: Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<[usize; 6]>) {
        if rest.is_empty() {
            out.push([acc[0], acc[1], acc[2], acc[3], acc[4], acc[5]]);
            return;
        }
        for (idx, &v) in rest.iter().enumerate() {
            let mut next = rest.clone();
            next.remove(idx);
            acc.push(v);
            rec(next, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(values.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn septuples_for(i: usize) -> Vec<[usize; 6]> {
    let others: Vec<usize> = (1..8).filter(|&x| x != i).collect();
    permutations(&others)
        .into_iter()
        .filter(|p| septuple_holds(i, p))
        .collect()
}

#[test]
fn every_imaginary_unit_admits_an_aligned_septuple() {
    for i in 1..8 {
        let found = septuples_for(i);
        assert!(!found.is_empty(), "no septuple for unit {i}");
    }
}

#[test]
fn ternary_bracket_sign_pattern_on_aligned_septuples() {
    let m8 = build_m8();
    let unit = |k: usize| basis_vector(8, k);
    let neg = |v: Vec<Rational>| -> Vec<Rational> { v.iter().map(|c| -c).collect() };
    for i in 1..8 {
        for p in septuples_for(i) {
            let [j, k, l, m, s, t] = p;
            // the expansions of the bracket against each slot of [e_i, e_j, e_l]
            let cases: [([usize; 3], Vec<Rational>); 17] = [
                ([i, j, l], unit(s)),
                ([i, l, k], unit(t)),
                // slot 1
                ([t, j, l], neg(unit(0))),
                ([k, j, l], unit(m)),
                ([m, j, l], neg(unit(k))),
                ([0, j, l], unit(t)),
                ([s, j, l], neg(unit(i))),
                // slot 2
                ([i, m, l], neg(unit(0))),
                ([i, 0, l], unit(m)),
                ([i, t, l], unit(k)),
                ([i, k, l], neg(unit(t))),
                ([i, s, l], neg(unit(j))),
                // slot 3
                ([i, j, k], unit(0)),
                ([i, j, t], unit(m)),
                ([i, j, 0], neg(unit(k))),
                ([i, j, m], neg(unit(t))),
                ([i, j, s], neg(unit(l))),
            ];
            for (args, expect) in &cases {
                let got = m8.bracket_basis(args);
                assert_eq!(
                    &got, expect,
                    "bracket{args:?} for septuple i={i}, (j,k,l,m,s,t)={p:?}"
                );
            }
        }
    }
}

#[test]
fn m8_identity_checkers() {
    let m8 = build_m8();
    let filippov = m8.check_filippov();
    assert!(!filippov.is_empty());
    assert_eq!(filippov[0].xs, vec![0, 1, 2]);
    assert_eq!(filippov[0].ys, vec![0, 4]);
    assert!(m8.check_nary_malcev().is_empty());
}

#[test]
fn table_snapshot_in_docs_is_current() {
    let o = build_octonions();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/octonion_table.md");
    let snapshot = std::fs::read_to_string(path).expect("docs/octonion_table.md exists");
    assert!(
        snapshot.contains(&o.table_markdown()),
        "docs/octonion_table.md is stale; regenerate with `naryd show --algebra octonions --format text`"
    );
}
