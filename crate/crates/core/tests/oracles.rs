//! Independent routes to values the library derives.

use fano_instanton::cohomology::h_vector;
use fano_instanton::serre::{construct_instanton, CurveConfig};
use fano_instanton::{
    cohomology_table, euler_characteristic, h_line_f, ChernData, DivisorClass, InstantonInvariants, SheafTerm,
};

/// Sections of `O_F(aξ+bf) = π₁*O(a+b) − bE`: monomials of degree `a+b` on
/// P³ vanishing to order `b` at `[1:0:0:0]`.
fn h0_by_monomials(a: i64, b: i64) -> u64 {
    let d = a + b;
    if d < 0 {
        return 0;
    }
    let m = b.max(0);
    let mut count = 0;
    for i0 in 0..=d {
        for i1 in 0..=d - i0 {
            for i2 in 0..=d - i0 - i1 {
                let i3 = d - i0 - i1 - i2;
                if i1 + i2 + i3 >= m {
                    count += 1;
                }
            }
        }
    }
    count
}

/// HRR for a line bundle written out with `ξ³ = ξ²f = ξf² = 1`, `f³ = 0`,
/// `c₁(F) = 2ξ+2f`, `c₂(F) = 6ξ²`.
fn chi_by_hand(a: i64, b: i64) -> i64 {
    let cube = a * a * a + 3 * a * a * b + 3 * a * b * b;
    let d2_c1 = {
        // D² = (a² + 2ab)ξ² + b²f², paired with 2ξ + 2f
        let (x, y) = (a * a + 2 * a * b, b * b);
        2 * x + 2 * x + 2 * y
    };
    // c₁² + c₂ = 4(3ξ² + f²) + 6ξ² = 18ξ² + 4f², paired with D
    let d_td = 18 * a + 18 * b + 4 * a;
    let num = 2 * cube + 3 * d2_c1 + d_td + 12;
    assert_eq!(num % 12, 0);
    num / 12
}

#[test]
fn global_sections_by_counting_monomials() {
    for a in -6..=7 {
        for b in -6..=7 {
            assert_eq!(h_line_f(0, a, b), h0_by_monomials(a, b), "({a},{b})");
        }
    }
}

#[test]
fn chi_by_hand_hrr() {
    for a in -9..=9 {
        for b in -9..=9 {
            let chi = euler_characteristic(&ChernData::line_bundle(DivisorClass::blowup(a, b))).unwrap();
            assert_eq!(chi, chi_by_hand(a, b), "({a},{b})");
        }
    }
}

#[test]
fn pullback_cotangent_sections() {
    // H⁰(P², Ω¹(2)) = 3 and H⁰(P², Ω¹(1)) = 0 pull back along π
    assert_eq!(h_vector(&SheafTerm::omega(0, 2)).unwrap().get(0), 3);
    assert_eq!(h_vector(&SheafTerm::omega(0, 1)).unwrap().get(0), 0);
    // Euler sequence: h⁰(Ω¹(3)) = 3·h⁰(O(2)) − h⁰(O(3)) = 18 − 10
    assert_eq!(h_vector(&SheafTerm::omega(0, 3)).unwrap().get(0), 8);
}

#[test]
fn closed_form_table_rows() {
    let t = cohomology_table(&InstantonInvariants::new(2, 1, 1)).unwrap();
    assert_eq!(t.row(1), [0, 2, 4, 2, 3, 3]);
    assert_eq!(t.row(2), [0, 0, 0, 1, 0, 0]);
    let t = cohomology_table(&InstantonInvariants::new(1, 0, 0)).unwrap();
    assert_eq!(t.row(1), [0, 1, 2, 0, 1, 0]);
}

#[test]
fn chi_along_the_serre_sequence() {
    // 0 → O(−f) → E → I_X(f) → 0 with χ(O_X(f)) = 2·conics + lines
    for conics in 0..5u64 {
        for lines in 1..6u64 {
            if 2 * conics + lines < 3 {
                continue;
            }
            let r = construct_instanton(&CurveConfig::new(conics, lines)).unwrap();
            let by_hand = chi_by_hand(0, -1) + chi_by_hand(0, 1) - (2 * conics + lines) as i64;
            assert_eq!(r.chi.chi_e, by_hand);
            assert_eq!(r.chi.chi_e, 2 - 2 * conics as i64 - (lines as i64 - 1));
        }
    }
}
