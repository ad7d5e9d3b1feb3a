//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines show up in `cargo test` output.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use galnil::blocktower::{level_profile, respects_factors};
use galnil::corpus::{load_corpus, CorpusEntry};
use galnil::error::Error;
use galnil::exact::{parse_poly, QPoly};
use galnil::galois_oracle::{galois_group, splitting_field_over_q};
use galnil::permgroup::{
    all_prime_chains, chain_satisfies, check_chain_characterization, is_gamma_d_direct,
    is_nilpotent_direct, superblock_levels, valuation, PermGroup,
};
use galnil::props::{irreducible_factors, Engine};
use galnil::report::GaloisReport;
use num_bigint::BigUint;

use common::{data_path, group_catalog};

type Outcome = Result<String, String>;

fn corpus() -> Vec<(CorpusEntry, QPoly)> {
    load_corpus(&data_path("corpus.jsonl"))
        .expect("corpus")
        .into_iter()
        .map(|e| {
            let f = e.parse().expect("corpus polynomial parses");
            (e, f)
        })
        .collect()
}

fn oracle(e: &Engine, f: &QPoly) -> Result<std::sync::Arc<PermGroup>, String> {
    e.oracle_group(f)
        .map_err(|err| format!("oracle failed on {}: {err}", f.pretty()))
}

fn required_members(c: &[(CorpusEntry, QPoly)]) -> Outcome {
    let must = [
        "x^2+1",
        "x^3-2",
        "x^3-3x-1",
        "x^4-2",
        "x^4+1",
        "x^4+x^3+x^2+x+1",
        "x^6+x^5+x^4+x^3+x^2+x+1",
        "x^6-2",
        "x^5-x-1",
    ];
    for m in must {
        let f = parse_poly(m).unwrap();
        if !c.iter().any(|(_, g)| *g == f) {
            return Err(format!("corpus lacks {m}"));
        }
    }
    if c.len() < 40 {
        return Err(format!("corpus has {} entries, need 40", c.len()));
    }
    if let Some((e, _)) = c.iter().find(|(_, f)| f.deg() < 2 || f.deg() > 8) {
        return Err(format!("{} has degree outside 2..=8", e.poly));
    }
    Ok(String::new())
}

fn criterion1(e: &Engine, c: &[(CorpusEntry, QPoly)]) -> Outcome {
    required_members(c)?;
    let start = Instant::now();
    let mut tower = Vec::with_capacity(c.len());
    for (_, f) in c {
        tower.push(
            e.test_nilpotent(f)
                .map_err(|err| format!("{}: {err}", f.pretty()))?
                .0,
        );
    }
    let secs = start.elapsed().as_secs_f64();
    let cap = BigUint::from(720u32);
    for ((entry, f), got) in c.iter().zip(tower) {
        let g = oracle(e, f)?;
        if g.order() > cap {
            return Err(format!(
                "{}: splitting field degree {} > 720",
                entry.poly,
                g.order()
            ));
        }
        let want = is_nilpotent_direct(&g).map_err(|err| err.to_string())?;
        if got != want {
            return Err(format!(
                "{}: tower says {got}, oracle group says {want}",
                entry.poly
            ));
        }
    }
    if secs > 600.0 {
        return Err(format!("tower route took {secs:.1} s"));
    }
    Ok(format!(
        "{} polynomials agree, tower route {secs:.2} s",
        c.len()
    ))
}

fn criterion2(e: &Engine, c: &[(CorpusEntry, QPoly)]) -> Outcome {
    let mut checks = 0;
    for (entry, f) in c {
        let g = oracle(e, f)?;
        for d in [4, 5] {
            let got = e.test_gamma_d(f, d).map_err(|err| err.to_string())?;
            let want = is_gamma_d_direct(&g, d).map_err(|err| err.to_string())?;
            if got != want {
                return Err(format!("{}: Γ_{d} tower {got}, oracle {want}", entry.poly));
            }
            checks += 1;
        }
        let got: Vec<u64> = e
            .prime_factors(f)
            .map_err(|err| format!("{}: {err}", entry.poly))?
            .into_iter()
            .collect();
        if got != g.order_primes() {
            return Err(format!(
                "{}: primes {got:?}, oracle {:?}",
                entry.poly,
                g.order_primes()
            ));
        }
        checks += 1;
    }
    Ok(format!("{checks} checks agree"))
}

fn criterion3() -> Outcome {
    let cat = group_catalog();
    if cat.len() < 60 {
        return Err(format!("catalog has {} groups, need 60", cat.len()));
    }
    let mut chains = 0;
    for c in &cat {
        let g = c.group();
        if g.degree() > 12 {
            return Err(format!("{} has degree {}", c.name, g.degree()));
        }
        let (ok, w) = check_chain_characterization(&g).map_err(|e| e.to_string())?;
        let direct = is_nilpotent_direct(&g).map_err(|e| e.to_string())?;
        if ok != direct {
            return Err(format!(
                "{}: characterization {ok}, direct {direct} ({:?})",
                c.name, w.failure
            ));
        }
        if direct {
            for ch in all_prime_chains(&g).map_err(|e| e.to_string())? {
                chains += 1;
                if !chain_satisfies(&g, ch.prime, &ch.blocks).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "{}: chain {:?} for p = {} fails",
                        c.name, ch.blocks, ch.prime
                    ));
                }
            }
        }
    }
    Ok(format!(
        "{} groups, {chains} maximal chains of nilpotent groups",
        cat.len()
    ))
}

/// Distinct irreducible factors of degree at least 2.
fn nontrivial_factors(f: &QPoly) -> Vec<QPoly> {
    irreducible_factors(f)
        .unwrap()
        .0
        .into_iter()
        .filter(|g| g.deg() >= 2)
        .collect()
}

fn criterion4(e: &Engine, c: &[(CorpusEntry, QPoly)]) -> Outcome {
    let mut lattices = 0;
    for (entry, f) in c {
        for g in nontrivial_factors(f) {
            let t = e.tower(&g).map_err(|err| err.to_string())?;
            let ours: Vec<Vec<usize>> = t
                .lattice_levels()
                .map_err(|err| err.to_string())?
                .iter()
                .map(|l| l.iter().map(|b| b.block_size).collect())
                .collect();
            let group = oracle(e, &g)?;
            let theirs: Vec<Vec<usize>> = superblock_levels(&group, &[0])
                .map_err(|err| err.to_string())?
                .iter()
                .map(|l| l.iter().map(Vec::len).collect())
                .collect();
            if level_profile(&ours) != level_profile(&theirs) {
                return Err(format!(
                    "{} (factor {}): fields {:?}, group {:?}",
                    entry.poly,
                    g.pretty(),
                    level_profile(&ours),
                    level_profile(&theirs)
                ));
            }
            lattices += 1;
        }
    }
    Ok(format!("{lattices} block lattices match"))
}

fn criterion5(e: &Engine, c: &[(CorpusEntry, QPoly)]) -> Outcome {
    let mut checks = 0;
    for (entry, f) in c {
        for g in nontrivial_factors(f) {
            let t = e.tower(&g).map_err(|err| err.to_string())?;
            for level in t.lattice_levels().map_err(|err| err.to_string())? {
                for b in level {
                    if b.block_size == t.degree() {
                        continue;
                    }
                    let factors = t.factor_over_block(&b).map_err(|err| err.to_string())?;
                    for s in t.maximal_superblocks(&b).map_err(|err| err.to_string())? {
                        checks += factors.len();
                        if !respects_factors(&s.t_delta, &factors).map_err(|err| err.to_string())? {
                            return Err(format!(
                                "{}: a factor over the block of size {} meets a superblock of size {} partially",
                                entry.poly, b.block_size, s.block_size
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checks} factor/superblock pairs, 0 violations"))
}

fn criterion6(e: &Engine, c: &[(CorpusEntry, QPoly)]) -> Outcome {
    let mut towers = 0;
    for (entry, f) in c {
        let (ok, v) = e.test_nilpotent(f).map_err(|err| err.to_string())?;
        if !ok {
            continue;
        }
        for t in &v.towers {
            let n = t.degree;
            let nu = valuation(n as u64, t.prime) as usize;
            let bad = |why: &str| Err(format!("{} p = {}: {why}", entry.poly, t.prime));
            if !t.accepted || t.indices.iter().any(|&i| i as u64 != t.prime) {
                return bad("index other than p");
            }
            if t.indices.len() != nu || t.normal_flags.iter().any(|b| !b) {
                return bad("chain length or normality");
            }
            for (size, sub) in t.block_sizes.iter().zip(&t.fields_chain) {
                if (sub.mu_sub.len() - 1) * size != n {
                    return bad("deg μ_Δ · #Δ ≠ n");
                }
            }
            towers += 1;
        }
    }
    Ok(format!("{towers} accepted towers check out"))
}

fn criterion7(c: &[(CorpusEntry, QPoly)]) -> Outcome {
    for (entry, f) in c {
        let run = || -> Result<String, Error> {
            let e = Engine::default();
            let v = e.verdict(f, true, &[4, 5], true)?;
            let mut r = GaloisReport::new(&entry.poly, f, v);
            r.timings.insert("tower".into(), 0);
            Ok(r.canonical_json())
        };
        let a = run().map_err(|err| err.to_string())?;
        let b = run().map_err(|err| err.to_string())?;
        if a != b {
            return Err(format!("{}: verdict JSON differs between runs", entry.poly));
        }
    }
    let f = QPoly::from_ints(&[-2, 0, 0, 1]);
    match splitting_field_over_q(&f, 5) {
        Err(Error::BudgetExceeded { budget: 5, .. }) => {}
        other => return Err(format!("budget 5 on x^3 - 2 gave {other:?}")),
    }
    let s = splitting_field_over_q(&f, 6).map_err(|err| err.to_string())?;
    let g = galois_group(&s, &s.poly).map_err(|err| err.to_string())?;
    if g.order() != BigUint::from(6u32) {
        return Err(format!("budget 6 gave a group of order {}", g.order()));
    }
    Ok(format!(
        "{} byte-identical verdicts; budgets 5 / 6 on x^3 - 2 behave",
        c.len()
    ))
}

fn main() -> ExitCode {
    let c = corpus();
    let e = Engine::default();
    let results: Vec<(&str, Outcome)> = vec![
        ("nilpotence agrees with the oracle", criterion1(&e, &c)),
        (
            "Γ_4, Γ_5 and primes agree with the oracle",
            criterion2(&e, &c),
        ),
        (
            "block-chain characterization on the group catalog",
            criterion3(),
        ),
        (
            "superblock lattices match the oracle group",
            criterion4(&e, &c),
        ),
        (
            "factors lie wholly inside or outside superblocks",
            criterion5(&e, &c),
        ),
        ("tower arithmetic on accepting runs", criterion6(&e, &c)),
        ("determinism and budget semantics", criterion7(&c)),
    ];
    let mut failed = 0;
    for (i, (what, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {}: PASS  {what}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {what}: {why}", i + 1);
            }
        }
    }
    let primes: BTreeSet<u64> = c
        .iter()
        .flat_map(|(e, _)| e.expect.primes.clone())
        .collect();
    println!("corpus: {} polynomials, primes seen {primes:?}", c.len());
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
