use std::process::ExitCode;

use fano_instanton::instanton::{collection, ext_difference, minimal_charge_bound};
use fano_instanton::monad::{beilinson_terms, verify_instanton_conditions};
use fano_instanton::serre::{construct_instanton, CurveConfig};
use fano_instanton::stability::{destabilizer_curve_class, extension_eliminator, hoppe_scan, StabilityMode};
use fano_instanton::{
    cohomology_table, euler_characteristic, h_line_f, h_line_flag, h_omega_f, monad_chern, rr_blowup,
    synthesize_monad_f, synthesize_monad_flag, ChernData, CurveClass, DivisorClass, GeometryDescriptor,
    InstantonInvariants, Rational,
};
use fano_instanton_tests::Criterion;

fn chi_line(a: i64, b: i64) -> i64 {
    euler_characteristic(&ChernData::line_bundle(DivisorClass::blowup(a, b))).unwrap()
}

fn alternating(h: impl Fn(u8) -> u64) -> i64 {
    (0..4u8).map(|i| if i % 2 == 0 { h(i) as i64 } else { -(h(i) as i64) }).sum()
}

fn admissible_grid(r: i64) -> Vec<InstantonInvariants> {
    let mut v = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for g in -r..=r {
                let inv = InstantonInvariants::new(a, b, g);
                if inv.is_admissible() {
                    v.push(inv);
                }
            }
        }
    }
    v
}

/// Rows q = 0..3 of `h^q(E ⊗ F_p)` as linear forms in α, β, γ.
fn symbolic_table(inv: &InstantonInvariants) -> [[i64; 6]; 4] {
    let (a, b, g) = (inv.alpha, inv.beta, inv.gamma);
    [[0; 6], [0, a, 2 * a, b + g, a + b, 2 * a + b - 2], [0, 0, 0, g, 0, 0], [0; 6]]
}

fn serre_duality() -> Criterion {
    let mut c = Criterion::new();
    for i in 0..4u8 {
        for a in -8..=8 {
            for b in -8..=8 {
                let (x, y) = (h_line_f(i, a, b), h_line_f(3 - i, -a - 2, -b - 2));
                c.check(x == y, || format!("h^{i}(O_F({a},{b}))={x} vs {y}"));
                let (x, y) = (h_omega_f(i, a, b), h_omega_f(3 - i, -a - 2, -b + 1));
                c.check(x == y, || format!("h^{i}(π*Ω¹({a},{b}))={x} vs {y}"));
                let (x, y) = (h_line_flag(i, a, b), h_line_flag(3 - i, -a - 2, -b - 2));
                c.check(x == y, || format!("flag h^{i}(O({a},{b}))={x} vs {y}"));
            }
        }
    }
    c
}

fn chi_consistency() -> Criterion {
    let mut c = Criterion::new();
    for a in -6..=6 {
        for b in -6..=6 {
            let alt = alternating(|i| h_line_f(i, a, b));
            c.check(alt == chi_line(a, b), || format!("χ(O_F({a},{b}))"));
            let flag = euler_characteristic(&ChernData::line_bundle(DivisorClass::flag(a, b))).unwrap();
            c.check(alternating(|i| h_line_flag(i, a, b)) == flag, || format!("χ(O_flag({a},{b}))"));
            let om = alternating(|i| h_omega_f(i, a, b));
            c.check(om == 3 * chi_line(a, b - 1) - chi_line(a, b), || format!("Euler sequence at ({a},{b})"));
            c.check(om == 3 * chi_line(a, b - 2) - chi_line(a, b - 3), || format!("dual Euler sequence at ({a},{b})"));
        }
    }
    c
}

fn riemann_roch() -> Criterion {
    let mut c = Criterion::new();
    for a in -5..=5 {
        for b in -5..=5 {
            for alpha in 0..=5 {
                for beta in -5..=5 {
                    let e = ChernData::rank_two(CurveClass::blowup(alpha, beta));
                    let chi = euler_characteristic(&e.twist(&DivisorClass::blowup(a, b)).unwrap()).unwrap();
                    let closed = rr_blowup(a, b, alpha, beta);
                    c.check(closed == Rational::from_integer(chi), || {
                        format!("rr_blowup({a},{b},{alpha},{beta})={closed} vs {chi}")
                    });
                    if a == 0 && b == 0 {
                        c.check(chi == 2 - 2 * alpha - beta, || format!("χ(E) at ({alpha},{beta})"));
                        let minus_h = euler_characteristic(&e.twist(&DivisorClass::blowup(-1, -1)).unwrap()).unwrap();
                        c.check(minus_h == 0, || format!("χ(E(−h)) at ({alpha},{beta})"));
                    }
                }
            }
        }
    }
    c
}

fn table_reproduction() -> Criterion {
    let mut c = Criterion::new();
    let sheaves = collection();
    for inv in admissible_grid(6) {
        let table = cohomology_table(&inv).unwrap();
        let expected = symbolic_table(&inv);
        for (q, row) in expected.iter().enumerate() {
            for (p, cell) in row.iter().enumerate() {
                c.check(table.get(q, p) as i64 == *cell, || format!("{inv:?} h^{q}(E⊗F_{p})"));
            }
        }
        for (p, sheaf) in sheaves.iter().enumerate() {
            let d = sheaf.divisor();
            let chi_tw = |x: i64, y: i64| {
                let t = d.checked_add(&DivisorClass::blowup(x, y)).unwrap();
                euler_characteristic(&inv.chern().twist(&t).unwrap()).unwrap()
            };
            let rr = if sheaf.rank() == 1 { chi_tw(0, 0) } else { 3 * chi_tw(0, -1) - chi_tw(0, 0) };
            c.check(table.column_euler(p) == rr, || format!("{inv:?} column {p} sum"));
        }
        c.check(table.column_euler(4) == -(inv.alpha + inv.beta), || format!("{inv:?} column 4"));
        c.check(table.column_euler(2) == -2 * inv.alpha, || format!("{inv:?} column 2"));
    }
    c
}

fn monad_round_trip() -> Criterion {
    let mut c = Criterion::new();
    for inv in admissible_grid(6) {
        let terms = synthesize_monad_f(&inv).unwrap();
        c.check(beilinson_terms(&cohomology_table(&inv).unwrap()).unwrap() == terms, || {
            format!("{inv:?} Beilinson terms")
        });
        let chern = monad_chern(&terms).unwrap();
        c.check(chern == ChernData::rank_two(CurveClass::blowup(inv.alpha, inv.beta)), || {
            format!("{inv:?} monad Chern data")
        });
        c.check(terms.alternating_rank() == 2, || format!("{inv:?} rank {}", terms.alternating_rank()));
        let report = verify_instanton_conditions(&terms, 4).unwrap();
        c.check(report.all_pass, || {
            let names: Vec<String> = report.failures().map(|f| format!("{} bound {}", f.name, f.bound)).collect();
            format!("{inv:?} {}", names.join(", "))
        });
    }
    c
}

fn stability() -> Criterion {
    let mut c = Criterion::new();
    for lambda in (-5..=5).filter(|l| *l != 0) {
        for alpha in 0..=20 {
            for beta in -20..=20 {
                let rest = destabilizer_curve_class(alpha, beta, lambda).unwrap();
                let sub = DivisorClass::blowup(3 * lambda, -4 * lambda);
                let prod = sub.intersect(&DivisorClass::blowup(-3 * lambda, 4 * lambda)).unwrap();
                let total = prod.checked_add(&rest).unwrap();
                c.check(total == CurveClass::blowup(alpha, beta), || format!("destabilizer ({alpha},{beta},{lambda})"));
                c.check(rest == CurveClass::blowup(alpha - 15 * lambda * lambda, beta + 16 * lambda * lambda), || {
                    format!("residual class ({alpha},{beta},{lambda})")
                });
            }
        }
    }
    for a in -8..=8 {
        for b in -8..=8 {
            c.check(extension_eliminator(a, b).eliminated(), || format!("extension ({a},{b}) not eliminated"));
        }
    }
    for alpha in 0..=5 {
        for beta in 0..=5 {
            let inv = InstantonInvariants::earnest(alpha, beta);
            if !inv.is_admissible() {
                continue;
            }
            let verdict = hoppe_scan(&synthesize_monad_f(&inv).unwrap(), 6, StabilityMode::Stable).unwrap();
            c.check(verdict.is_stable(), || format!("hoppe ({alpha},{beta},0): {verdict}"));
        }
    }
    c
}

fn construction() -> Criterion {
    let mut c = Criterion::new();
    for conics in 0..=5u64 {
        for lines in 1..=6u64 {
            let (alpha, beta) = (conics as i64, lines as i64 - 1);
            if 2 * alpha + beta < 2 {
                continue;
            }
            let r = construct_instanton(&CurveConfig::new(conics, lines)).unwrap();
            c.check(r.chern.c2 == CurveClass::blowup(alpha, beta) && r.chern.c1.is_zero(), || {
                format!("c₂ for ({conics},{lines})")
            });
            c.check(r.invariants.gamma == 0, || format!("γ for ({conics},{lines})"));
            let ext1 = 8 * alpha + 4 * beta - 3;
            let diff = ext_difference(&GeometryDescriptor::blowup_p3(), 0, 2 * alpha + beta).unwrap();
            c.check(r.ext == [ext1, 0, 0] && diff == ext1, || format!("Ext for ({conics},{lines}): {:?}", r.ext));
            c.check(r.hypotheses.existence && r.hypotheses.uniqueness, || {
                format!("Serre hypotheses ({conics},{lines})")
            });
            c.check(r.moduli.dimension == ext1, || format!("moduli dimension ({conics},{lines})"));
        }
    }
    c
}

fn classical_scalars() -> Criterion {
    let mut c = Criterion::new();
    let bounds = [GeometryDescriptor::p3(), GeometryDescriptor::blowup_p3(), GeometryDescriptor::flag_threefold()]
        .map(|g| minimal_charge_bound(&g));
    c.check(bounds == [1, 2, 2].map(Rational::from_integer), || format!("minimal bounds {bounds:?}"));
    for alpha in -10..=10 {
        let d = ext_difference(&GeometryDescriptor::p3(), 0, alpha).unwrap();
        c.check(d == 8 * alpha - 3, || format!("P³ ext difference at {alpha}: {d}"));
    }
    c.check(DivisorClass::<i64>::blowup(1, 1).cube().unwrap() == 7, || "deg F".into());
    c.check(DivisorClass::<i64>::flag(1, 1).cube().unwrap() == 6, || "deg flag".into());
    for k1 in 0..=6u64 {
        for k2 in 0..=6u64 {
            let t = synthesize_monad_flag(k1, k2);
            c.check(t.rank(0) == 2 * k1 + 2 * k2 + 2, || format!("flag middle rank ({k1},{k2})"));
            let chern = monad_chern(&t).unwrap();
            c.check(chern.c2 == CurveClass::flag(k1 as i64, k2 as i64) && chern.c1.is_zero(), || {
                format!("flag c₂ ({k1},{k2})")
            });
        }
    }
    c
}

type Entry = (u32, &'static str, fn() -> Criterion);

fn main() -> ExitCode {
    let criteria: [Entry; 8] = [
        (1, "serre-duality", serre_duality),
        (2, "chi-consistency", chi_consistency),
        (3, "rr-closed-form", riemann_roch),
        (4, "table-reproduction", table_reproduction),
        (5, "monad-round-trip", monad_round_trip),
        (6, "stability-suite", stability),
        (7, "construction-suite", construction),
        (8, "classical-scalars", classical_scalars),
    ];
    let mut all = true;
    for (n, name, run) in criteria {
        let c = run();
        all &= c.passed();
        println!("{}", c.line(n, name, "exact"));
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
