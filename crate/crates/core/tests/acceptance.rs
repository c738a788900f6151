//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use kronlab::arith::factorial;
use kronlab::characters::kron_power_oracle;
use kronlab::symfunc::{multiply_by, perp, scalar};
use kronlab::tableaux::{count_all_kronecker_tableaux, in_regime};
use kronlab::{
    build_operator, character_table, count_kronecker_tableaux, egf_check, from_pair, kron_power_nm1, kron_product,
    kron_product_via_operator, list_kronecker_tableaux, multiplicity_formula, p2, partitions_of, to_pair,
    KroneckerOperator, KroneckerTableau, PartialStandardTableau, Partition, SchurSum,
};

type Check = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn p(parts: &[usize]) -> Partition {
    Partition::from_parts(parts)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_s4() -> Check {
    let expected: [[i64; 5]; 5] =
        [[1, 1, 1, 1, 1], [-1, 0, -1, 1, 3], [0, -1, 2, 0, 2], [1, 0, -1, -1, 3], [-1, 1, 1, -1, 1]];
    let table = character_table(4);
    ensure(table.partitions == partitions_of(4), || "row order".into())?;
    for (i, row) in expected.iter().enumerate() {
        let got: Vec<BigInt> = table.values[i].clone();
        let want: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        ensure(got == want, || format!("row {}: {got:?}", table.partitions[i]))?;
    }
    Ok(())
}

fn square_31() -> Check {
    let expected = SchurSum::from_terms(4, [p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])].map(|q| (q, 1)));
    let ch = kron_product(&p(&[3, 1]), &p(&[3, 1])).map_err(|e| e.to_string())?;
    let op = kron_product_via_operator(&p(&[3, 1]), &p(&[3, 1])).map_err(|e| e.to_string())?;
    ensure(ch == expected, || format!("character route: {ch}"))?;
    ensure(op == expected, || format!("operator route: {op}"))?;
    ensure(ch.coeff(&p(&[1, 1, 1, 1])) == BigInt::from(0), || "sign multiplicity".into())
}

fn small_operators() -> Check {
    let show = |q: &[usize]| build_operator(&p(q)).normalized().to_string();
    ensure(show(&[1]) == "s[1] s[1]^⊥ - 1", || show(&[1]))?;
    ensure(show(&[2]) == "s[2] s[2]^⊥ + s[1,1] s[1,1]^⊥ - s[1] s[1]^⊥", || show(&[2]))?;
    ensure(build_operator(&Partition::empty()).normalized() == KroneckerOperator::identity(), || "identity".into())
}

fn operator_on_331() -> Check {
    let got = build_operator(&p(&[1])).normalized().apply(&SchurSum::schur(&p(&[3, 3, 1])));
    let expected = SchurSum::from_terms(
        7,
        [p(&[3, 3, 1]), p(&[4, 2, 1]), p(&[3, 2, 1, 1]), p(&[3, 2, 2]), p(&[4, 3])].map(|q| (q, 1)),
    );
    ensure(got == expected, || got.to_string())
}

fn operator_sweep() -> Check {
    let mut pairs = 0;
    for n in 1..=6 {
        for lambda in partitions_of(n) {
            for mu in partitions_of(n) {
                let a = kron_product_via_operator(&lambda, &mu).map_err(|e| e.to_string())?;
                let b = kron_product(&lambda, &mu).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("{lambda} ⊙ {mu}: {a} vs {b}"))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs == 1 + 4 + 9 + 25 + 49 + 121, || format!("{pairs} pairs"))
}

fn power_sweep() -> Check {
    for n in 2..=6 {
        for k in 0..=5 {
            let op = kron_power_nm1(n, k).map_err(|e| e.to_string())?;
            let ch = kron_power_oracle(n, k).map_err(|e| e.to_string())?;
            ensure(op == ch, || format!("n={n} k={k}: operator {op} vs character {ch}"))?;
            let counts = count_all_kronecker_tableaux(&Partition::row(n), k);
            for lambda in partitions_of(n) {
                let c = BigInt::from(counts.get(&lambda).cloned().unwrap_or_default());
                ensure(c == op.coeff(&lambda), || format!("n={n} k={k} {lambda}: tableaux {c}"))?;
            }
        }
    }
    Ok(())
}

fn bijection() -> Check {
    let walk: KroneckerTableau =
        "[6] [5,1] [5,1]*2:1 [4,2] [3,2,1] [4,1,1] [3,2,1] [2,2,2] [2,2,1,1] [3,2,1] [2,2,2] [3,2,1] [2,2,2]"
            .parse()
            .map_err(|e: kronlab::Error| e.to_string())?;
    let pair = to_pair(&walk).map_err(|e| e.to_string())?;
    let t = PartialStandardTableau::new(vec![vec![4, 10], vec![8, 12]]).unwrap();
    ensure(pair.tableau == t, || format!("T = {}", pair.tableau))?;
    let pi = pair.permutation.to_string();
    ensure(pi == "(4)(5,3)(8,6)(9,2,1)(10)(11,7)(12)", || format!("π = {pi}"))?;
    ensure(from_pair(&pair, 6).as_ref() == Ok(&walk), || "inverse".into())?;

    for k in 0..=4 {
        let n = k + 4;
        for lambda in partitions_of(n).into_iter().filter(|l| l.part(2) <= 4) {
            for walk in list_kronecker_tableaux(&Partition::row(n), &lambda, k, 1 << 22).map_err(|e| e.to_string())? {
                let pair = to_pair(&walk).map_err(|e| e.to_string())?;
                ensure(pair.shape() == lambda.truncated(), || format!("{walk}: shape {}", pair.shape()))?;
                ensure(from_pair(&pair, n).as_ref() == Ok(&walk), || format!("{walk}: round trip"))?;
            }
        }
    }
    Ok(())
}

fn formula_at_12() -> Check {
    let n = 12;
    for k in 0..=5 {
        for lambda in partitions_of(n).into_iter().filter(|l| in_regime(n, k, l)) {
            let f = multiplicity_formula(n, k, &lambda).map_err(|e| e.to_string())?;
            let c = count_kronecker_tableaux(&Partition::row(n), &lambda, k).map_err(|e| e.to_string())?;
            ensure(f == c, || format!("k={k} {lambda}: formula {f}, tableaux {c}"))?;
        }
    }
    Ok(())
}

fn generating_function() -> Check {
    for lambda_bar in [Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])] {
        let report = egf_check(&lambda_bar, 10);
        ensure(report.passed(), || format!("{lambda_bar}: {:?}", report.rows.iter().find(|r| !r.ok)))?;
        ensure(report.rows.len() == 11 - lambda_bar.weight(), || "row count".into())?;
    }
    Ok(())
}

fn random_sum(rng: &mut StdRng, degree: usize) -> SchurSum {
    let mut f = SchurSum::zero(degree);
    for q in partitions_of(degree) {
        if rng.gen_bool(0.6) {
            f.add_term(q, BigInt::from(rng.gen_range(-3i64..=3)));
        }
    }
    f
}

fn random_tableau(rng: &mut StdRng) -> PartialStandardTableau {
    let mut t = PartialStandardTableau::empty();
    for _ in 0..rng.gen_range(0..=12) {
        let x = rng.gen_range(1..=40);
        if t.position(x).is_none() {
            t.insert(x).unwrap();
        }
    }
    t
}

fn set_partition_counts(n: usize) -> Vec<u64> {
    let mut sizes: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for s in sizes {
            for b in 0..s.len() {
                let mut t = s.clone();
                t[b] += 1;
                next.push(t);
            }
            let mut t = s;
            t.push(1);
            next.push(t);
        }
        sizes = next;
    }
    let mut counts = vec![0u64; n / 2 + 1];
    for s in sizes.iter().filter(|s| s.iter().all(|&b| b >= 2)) {
        counts[s.len()] += 1;
    }
    counts
}

fn properties() -> Check {
    let mut rng = StdRng::seed_from_u64(0x6b72_6f6e);
    for case in 0..500 {
        let gamma_weight = rng.gen_range(1..=3);
        let gammas = partitions_of(gamma_weight);
        let gamma = gammas[rng.gen_range(0..gammas.len())].clone();
        let degree = gamma_weight + rng.gen_range(0..=4);
        let f = random_sum(&mut rng, degree);
        let g = random_sum(&mut rng, degree - gamma_weight);
        let lhs = scalar(&perp(&gamma, &f), &g);
        let rhs = scalar(&f, &multiply_by(&gamma, &g));
        ensure(lhs == rhs, || format!("adjointness case {case}: γ = {gamma}"))?;
    }
    let mut cases = 0;
    while cases < 1000 {
        let t = random_tableau(&mut rng);
        let x = rng.gen_range(1..=50);
        if t.position(x).is_some() {
            continue;
        }
        let mut u = t.clone();
        let cell = u.insert(x).map_err(|e| e.to_string())?;
        ensure(PartialStandardTableau::new(u.rows().to_vec()).is_ok(), || "insert broke the tableau".into())?;
        ensure(u.delete(cell) == Ok(x) && u == t, || format!("RSK round trip on {t} with {x}"))?;
        cases += 1;
    }
    for n in 0..=10 {
        for (m, &c) in set_partition_counts(n).iter().enumerate() {
            ensure(p2(n, m) == BigUint::from(c), || format!("p2({n},{m})"))?;
        }
    }
    for n in 0..=8 {
        let total: BigUint = partitions_of(n).iter().map(|l| l.standard_tableaux_count().pow(2)).sum();
        ensure(total == factorial(n), || format!("sum of squared dimensions at n={n}"))?;
    }
    ensure(p2(0, 0) == BigUint::one(), || "p2(0,0)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 character table of S_4", 1, table_s4),
        ("2 chi^(3,1) squared, both routes", 1, square_31),
        ("3 operators for (1) and (2)", 1, small_operators),
        ("4 U_(1) applied to s_(3,3,1)", 1, operator_on_331),
        ("5 operator = character, all pairs n <= 6", 60, operator_sweep),
        ("6 tableaux = operator = character powers, n <= 6, k <= 5", 60, power_sweep),
        ("7 pair bijection: worked example and round trips", 120, bijection),
        ("8 closed formula = tableau count at n = 12, k <= 5", 60, formula_at_12),
        ("9 generating function coefficients, k <= 10", 10, generating_function),
        ("10 property suites", 120, properties),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        match (&result, over) {
            (Ok(()), false) => println!("PASS  {name}  ({elapsed:.2?}, budget {budget} s)"),
            (Ok(()), true) => {
                failed += 1;
                println!("FAIL  {name}  ({elapsed:.2?} exceeds budget {budget} s)");
            }
            (Err(msg), _) => {
                failed += 1;
                println!("FAIL  {name}  ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        println!("all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
