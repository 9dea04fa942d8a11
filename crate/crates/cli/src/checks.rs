//! The property suite behind `pascalmod check`. Laws run in parallel; the
//! reports come back in declaration order.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use pascalmod::automata::{
    affine_dfa, altsum_dfa, cobham_morphism, compose_with_triple, is_functional, linear_rep_n,
    nim_triple_dfa, pad_pair, pair_dfa_n, unary_word, Direction,
};
use pascalmod::basep::MuMap;
use pascalmod::{nim, pascal, poly, pyramid, summatory, Prime, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// Deliberate corruptions for negative-control runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Bumps `μ_{1,1}(1)` by one inside the row concatenation.
    MuTable,
}

struct Bounds {
    rows: u64,
    poly: u64,
    nim: u64,
    gray: u64,
    dfa: u64,
    linear: u64,
    sums: u64,
    dyadic_k: u32,
    block: u64,
    cube_cells: u128,
    pyramid_diag: u64,
    growth: u64,
    morph_p2: usize,
    morph_p3: usize,
}

impl Level {
    fn bounds(self) -> Bounds {
        match self {
            Level::Quick => Bounds {
                rows: 128,
                poly: 64,
                nim: 1_000,
                gray: 1_000,
                dfa: 1_000,
                linear: 1_000,
                sums: 1_000,
                dyadic_k: 8,
                block: 16,
                cube_cells: 1 << 12,
                pyramid_diag: 16,
                growth: 64,
                morph_p2: 1 << 10,
                morph_p3: 729,
            },
            Level::Full => Bounds {
                rows: 512,
                poly: 256,
                nim: 100_000,
                gray: 10_000,
                dfa: 100_000,
                linear: 10_000,
                sums: 100_000,
                dyadic_k: 14,
                block: 64,
                cube_cells: 1 << 21,
                pyramid_diag: 64,
                growth: 512,
                morph_p2: 1 << 14,
                morph_p3: 19_683,
            },
        }
    }
}

const SMALL: [Prime; 3] = [Prime::TWO, Prime::THREE, Prime::FIVE];
const ALL: [Prime; 4] = [Prime::TWO, Prime::THREE, Prime::FIVE, Prime::SEVEN];

type Law = fn(&Bounds, Option<Fault>) -> Report;

const LAWS: &[(&str, Law)] = &[
    ("rows: Lucas, additive and recursive", law_rows),
    ("rows: block concatenation", law_row_concat),
    ("rows: t(pn+1) = (p+1) t(pn)", law_t_shift),
    ("rows: t' product form", law_t_prime),
    ("rows: growth witness", law_growth),
    ("poly: kappa and digit condition", law_kappa),
    ("poly: evaluation", law_poly_eval),
    ("nim: inverse round trip", law_step_inverse),
    ("nim: gray link", law_gray_link),
    ("nim: odious chain partition", law_partition),
    ("automata: pair machine", law_pair_dfa),
    ("automata: composition", law_composition),
    ("automata: alternating-sum acceptor", law_altsum),
    ("automata: morphism fixed point", law_morphism),
    ("automata: linear representation", law_linear),
    ("summatory: evil sums", law_evil_sums),
    ("summatory: step sums", law_step_sums),
    ("summatory: dyadic maxima", law_dyadic),
    ("pyramid: block relation", law_block),
    ("pyramid: sigma cubes", law_cubes),
    ("pyramid: recurrences", law_pyramid_rules),
    ("pyramid: translations", law_translations),
    ("pyramid: diagonal lines", law_pyramid_diag),
];

pub fn law_names() -> Vec<&'static str> {
    LAWS.iter().map(|(n, _)| *n).collect()
}

/// Runs every law; one report per law, named after it.
pub fn run_checks(level: Level, fault: Option<Fault>) -> Vec<Report> {
    let bounds = level.bounds();
    LAWS.par_iter()
        .map(|(name, law)| {
            let inner = law(&bounds, fault);
            let mut r = Report::new(*name);
            r.merge(inner);
            r
        })
        .collect()
}

fn from_result(name: &str, r: pascalmod::Result<Report>) -> Report {
    r.unwrap_or_else(|e| {
        let mut rep = Report::new(name);
        rep.fail(e.to_string());
        rep
    })
}

fn law_rows(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("rows");
    for p in ALL {
        let mut cache = pascal::TCache::new(p);
        for (n, additive) in pascal::rows(p).take(b.rows as usize + 1).enumerate() {
            let n = n as u64;
            let lucas = pascal::row(n, p);
            r.check(lucas == additive, || format!("row {n} mod {p}"));
            let t = lucas.value();
            r.check(cache.get(n) == t, || format!("recursive t_{{{p},{n}}}"));
            if p == Prime::TWO {
                r.check(pascal::fermat_product(n) == t, || {
                    format!("Fermat product at {n}")
                });
            }
        }
    }
    r
}

fn faulty_mu(a: u32, bb: u32, p: Prime) -> pascalmod::Result<MuMap> {
    let m = MuMap::new(a, bb, p)?;
    if (a, bb) != (1, 1) {
        return Ok(m);
    }
    let mut table = m.table().to_vec();
    table[1] = (table[1] + 1) % p.get();
    MuMap::from_table(a, bb, p, table)
}

fn law_row_concat(b: &Bounds, fault: Option<Fault>) -> Report {
    let mut r = Report::new("row concat");
    for p in ALL {
        for n in 1..=b.rows {
            let built = match fault {
                Some(Fault::MuTable) => pascal::row_concat_with(n, p, |a, bb| faulty_mu(a, bb, p)),
                None => pascal::row_concat(n, p),
            };
            match built {
                Ok(row) => r.check(row == pascal::row(n, p), || format!("row {n} mod {p}")),
                Err(e) => r.fail(format!("row {n} mod {p}: {e}")),
            }
        }
    }
    r
}

fn law_t_shift(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("shift");
    for p in ALL {
        let ts = pascal::t_sequence(p, (p.as_u64() * b.rows + 2) as usize);
        for n in 0..=b.rows {
            let pn = (p.as_u64() * n) as usize;
            r.check(ts[pn + 1] == &ts[pn] * (p.get() + 1), || {
                format!("n={n} p={p}")
            });
        }
    }
    r
}

fn law_t_prime(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("t'");
    for p in ALL {
        for n in 0..=b.rows {
            r.check(
                pascal::t_prime(n, p) == pascal::t_prime_recursive(n, p),
                || format!("t'_{{{p},{n}}}"),
            );
        }
    }
    r
}

fn law_growth(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("growth");
    for p in SMALL {
        r.merge(from_result(
            "growth",
            pascal::growth_witness(p, b.growth + 2 * p.as_u64()),
        ));
    }
    let ts = pascal::t_sequence(Prime::TWO, b.growth as usize + 5);
    for n in 0..=b.growth as usize {
        r.check(ts[n + 4] >= &ts[n] * 9u32, || {
            format!("t_{{2,{}}} < 9 t_{{2,{n}}}", n + 4)
        });
    }
    r
}

fn law_kappa(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("kappa");
    let one_plus_x = poly::IntPolynomial::one_plus_x();
    for p in SMALL {
        for n in 0..=b.poly {
            let k = poly::kappa(n, p);
            r.check(k.is_zero() == poly::digit_condition(n, p), || {
                format!("n={n} p={p}")
            });
            let next = poly::kappa(p.as_u64() * n + 1, p);
            let lifted = &one_plus_x * &poly::kappa(p.as_u64() * n, p);
            r.check(next == lifted, || format!("κ recurrence at n={n} p={p}"));
        }
    }
    r
}

fn law_poly_eval(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("poly eval");
    for p in ALL {
        let x = BigInt::from(p.get());
        for n in 0..=b.poly {
            let v = poly::eval_at(&poly::p_poly(n, p), &x);
            r.check(v == BigInt::from(pascal::t(n, p)), || {
                format!("P_n(p) at n={n} p={p}")
            });
        }
    }
    let three = BigInt::from(3);
    let listing = [1, 4, 10, 40, 82, 328, 820, 3280, 6562];
    for (n, want) in listing.into_iter().enumerate() {
        let v = poly::eval_at(&poly::p_poly(n as u64, Prime::TWO), &three);
        r.check(v == BigInt::from(want), || format!("P_{n}(3) = {v}"));
    }
    r
}

fn law_step_inverse(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("inverse");
    for p in SMALL {
        for m in 0..b.nim {
            let e = nim::step_u64(m, p);
            r.check(nim::step_inverse_u64(e, p) == Some(m), || {
                format!("m={m} p={p}")
            });
            let big = BigUint::from(m);
            r.check(nim::in_image_set(&BigUint::from(e), p), || {
                format!("N({m}) ∉ E_{p}")
            });
            r.check(nim::step(&big, p).to_u64() == Some(e), || {
                format!("big N({m}) p={p}")
            });
        }
    }
    r
}

fn law_gray_link(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("gray link");
    for p in SMALL {
        for m in 0..b.gray {
            let (lhs, rhs) = nim::gray_link(&BigUint::from(m), p);
            r.check(lhs == rhs, || format!("m={m} p={p}: {lhs} vs {rhs}"));
        }
    }
    r
}

fn law_partition(_: &Bounds, _: Option<Fault>) -> Report {
    nim::partition_check(2056).report
}

fn pair(m: u64, n: u64, p: Prime) -> Vec<Vec<u32>> {
    pad_pair(&BigUint::from(m), &BigUint::from(n), p)
}

fn law_pair_dfa(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("pair machine");
    for p in SMALL {
        let d = pair_dfa_n(p);
        r.check(is_functional(&d), || {
            format!("p={p} machine is not functional")
        });
        r.check(d.is_minimal(), || format!("p={p} machine is not minimal"));
        for m in 0..b.dfa {
            let n = nim::step_u64(m, p);
            r.check(d.accepts(&pair(m, n, p)), || {
                format!("rejects ({m}, N({m})) p={p}")
            });
            r.check(!d.accepts(&pair(m, n + 1, p)), || {
                format!("accepts ({m}, N({m})+1) p={p}")
            });
        }
    }
    r
}

fn law_composition(_: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("composition");
    for p in SMALL {
        match compose_with_triple(&affine_dfa(p.get(), 0, p), &nim_triple_dfa(p)) {
            Ok(c) => r.check(c.equivalent(&pair_dfa_n(p)), || format!("p={p}")),
            Err(e) => r.fail(format!("p={p}: {e}")),
        }
    }
    r
}

fn law_altsum(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("altsum");
    for p in ALL {
        let min = altsum_dfa(p).minimize();
        r.check(min.state_count() == p.get() as usize, || {
            format!("p={p}: {} states", min.state_count())
        });
        for n in 0..b.dfa {
            let big = BigUint::from(n);
            let w = unary_word(&big, p, Direction::MsdFirst);
            r.check(min.accepts(&w) == nim::in_image_set(&big, p), || {
                format!("n={n} p={p}")
            });
        }
    }
    r
}

fn law_morphism(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("morphism");
    for (p, len) in [(Prime::TWO, b.morph_p2), (Prime::THREE, b.morph_p3)] {
        let phi = cobham_morphism(p);
        r.check(phi.to_dfa().isomorphic(&altsum_dfa(p).minimize()), || {
            format!("p={p}: morphism machine differs from the minimal acceptor")
        });
        for (n, c) in phi.coded_prefix(len).into_iter().enumerate() {
            let inside = nim::in_image_set(&BigUint::from(n), p);
            r.check((c == 1) == inside, || format!("n={n} p={p}"));
        }
    }
    r
}

fn law_linear(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("linear");
    let rep = linear_rep_n();
    for m in 0..b.linear {
        let want = BigInt::from(nim::step_u64(m, Prime::TWO));
        let big = BigUint::from(m);
        let exact = rep.eval(&big).ok();
        let scaled = rep.eval_scaled(&big).ok();
        r.check(exact.as_ref() == Some(&want), || {
            format!("rational route at {m}")
        });
        r.check(scaled.as_ref() == Some(&want), || {
            format!("integer route at {m}")
        });
    }
    r
}

fn law_evil_sums(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("evil sums");
    let mut brute = 0u128;
    for m in 0..=b.sums {
        if m > 0 {
            brute += nim::evil_nth(&BigUint::from(m)).to_u128().unwrap_or(0);
        }
        r.check(summatory::evil_sum_closed(m) == brute, || {
            format!("S_e({m})")
        });
    }
    r.check(
        summatory::evil_sum_brute(1000) == summatory::evil_sum_closed(1000),
        || "S_e(1000) brute".into(),
    );
    r
}

fn law_step_sums(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("step sums");
    let mut brute = 0u128;
    for m in 0..=b.sums {
        if m > 0 {
            brute += u128::from(nim::step_u64(m, Prime::TWO));
        }
        match summatory::step_sum_via_gray(m) {
            Ok(v) => r.check(v == brute, || format!("S_N({m}): {v} vs {brute}")),
            Err(e) => r.fail(format!("S_N({m}): {e}")),
        }
    }
    r.merge(from_result("lemma", summatory::lemma_tec_check(b.sums / 2)));
    r
}

fn law_dyadic(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("dyadic");
    for k in 2..=b.dyadic_k {
        match summatory::dyadic_report(k) {
            Ok(d) => {
                let peak = (1u64 << k) + (1u64 << (k - 1)) - 1;
                r.check(d.argmax == peak, || format!("k={k}: argmax {}", d.argmax));
                r.merge(d.report);
            }
            Err(e) => r.fail(format!("k={k}: {e}")),
        }
    }
    r
}

fn law_block(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("block");
    for p in SMALL {
        let pv = p.as_u64();
        let pu = p.get();
        for sum in 0..=b.block {
            for x in 0..=sum {
                for y in 0..=sum - x {
                    let z = sum - x - y;
                    let (bx, by, bz) = (x / pv, y / pv, z / pv);
                    let (a, bb, c) = ((x % pv) as u32, (y % pv) as u32, (z % pv) as u32);
                    let direct = pyramid::trinomial(x, y, z, p);
                    match pyramid::block_relation(bx, by, bz, a, bb, c, p) {
                        Ok(v) => r.check(v == direct, || format!("({x},{y},{z}) p={p}")),
                        Err(e) => r.fail(format!("({x},{y},{z}) p={p}: {e}")),
                    }
                }
            }
        }
        r.check(pyramid::carry_lemma_holds(p), || {
            format!("carry lemma p={p}")
        });
        r.check(
            pyramid::carry_floor_counterexamples(p) == vec![(1, pu - 1)],
            || format!("floor form counterexamples p={p}"),
        );
    }
    r
}

fn law_cubes(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("cubes");
    for p in ALL {
        let mut k = 1;
        while u128::from(p.get()).pow(3 * k) <= b.cube_cells {
            match pyramid::iterate_sigma(p, k) {
                Ok(cube) => r.merge(cube.check_direct()),
                Err(e) => r.fail(format!("p={p} k={k}: {e}")),
            }
            k += 1;
        }
    }
    r
}

fn law_pyramid_rules(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("pyramid rules");
    for p in SMALL {
        r.merge(pyramid::pascal_rule_3d_check(b.pyramid_diag, p));
    }
    r.merge(pyramid::nim_recurrence_2d_check(b.pyramid_diag));
    r
}

fn law_translations(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("translations");
    let planes: &[u64] = if b.block >= 64 {
        &[23, 30, 48, 124]
    } else {
        &[23]
    };
    for &i in planes {
        for p in SMALL {
            let mut k = 0;
            while p.as_u64().pow(k) <= i {
                match pyramid::translation_identity_check(i, k, p) {
                    Ok(t) => r.merge(t.report),
                    Err(e) => r.fail(format!("plane {i} k={k} p={p}: {e}")),
                }
                k += 1;
            }
        }
    }
    r
}

fn law_pyramid_diag(b: &Bounds, _: Option<Fault>) -> Report {
    let mut r = Report::new("diagonal");
    for p in SMALL {
        for n in 0..=b.pyramid_diag {
            match pyramid::t_pyramid(n, n, p) {
                Ok(v) => r.check(v == pascal::t(n, p), || format!("n={n} p={p}")),
                Err(e) => r.fail(e.to_string()),
            }
        }
    }
    r
}
