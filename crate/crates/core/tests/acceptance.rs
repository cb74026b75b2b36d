//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

mod support;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use bitvec::prelude::*;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reuselaw::analysis::{
    check_rate_bound, erdos_kac_check, fit_heaps, fit_zipf, incompressibility_probe,
    rank_frequency, ErdosKacOptions, RankEntry, RankFrequencyTable, DEFAULT_MIN_COUNT,
};
use reuselaw::cli::{cmd_analyze, cmd_report, cmd_scan, cmd_simulate, AnalyzeOptions, ScanOptions};
use reuselaw::domainsim::{
    incompleteness_curve, mean_ratio, mean_reuse_proportion, run_trials, simulated_corpus,
    BodySizes, CompressorConfig, DomainSpec, Library, TrialOutcome,
};
use reuselaw::infocode::{
    omega_codeword, omega_decode, omega_decode_all, shannon_fano_codebook, FiniteDistribution,
};
use reuselaw::ingest::{build_corpus, load_corpus, read_corpus, scan_elf, write_corpus, Corpus};
use tempfile::TempDir;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn domain(target_h: f64, zipf_exponent: f64, seed: u64) -> DomainSpec {
    DomainSpec {
        target_h,
        alphabet_size: 1 << 10,
        zipf_exponent,
        body_size_bits: BodySizes::Fixed(64),
        seed,
    }
}

fn trials(spec: &DomainSpec, s: u64, n: usize) -> Vec<TrialOutcome> {
    let library = Library::build(spec).expect("library");
    run_trials(spec, &library, s, n, CompressorConfig::default()).expect("trials")
}

/// Exact `Σ 2^-ℓ ≤ 1`: walks the code tree depth by depth counting free
/// nodes, saturating once they outnumber the remaining codewords.
fn kraft_exact(lengths: &[u32]) -> bool {
    let mut sorted = lengths.to_vec();
    sorted.sort_unstable();
    let cap = sorted.len() as u128 + 1;
    let (mut free, mut depth) = (1u128, 0u32);
    for &l in &sorted {
        while depth < l && free < cap {
            free *= 2;
            depth += 1;
        }
        depth = l;
        if free == 0 {
            return false;
        }
        free -= 1;
    }
    true
}

fn shannon_entropy(p: &[f64]) -> f64 {
    let sum: f64 = p.iter().sum();
    p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| {
            let q = x / sum;
            -q * q.log2()
        })
        .sum()
}

fn coding_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_gap = f64::NEG_INFINITY;
    for case in 0..100 {
        let support = rng.random_range(1..=1usize << 12);
        let masses: Vec<f64> = match case % 3 {
            0 => (0..support).map(|_| rng.random::<f64>()).collect(),
            1 => (1..=support)
                .map(|n| (n as f64).powf(-rng.random_range(0.5..2.5)))
                .collect(),
            _ => (0..support).map(|_| rng.random::<f64>().powi(8)).collect(),
        };
        let d = FiniteDistribution::from_masses(&masses).unwrap();
        let code = shannon_fano_codebook(&d).unwrap();
        let lengths = code.codebook().lengths();
        if !kraft_exact(&lengths) {
            return verdict(false, format!("case {case}: Kraft sum exceeds 1"));
        }
        let h = shannon_entropy(&masses);
        let total: f64 = masses.iter().sum();
        let expected: f64 = (0..masses.len())
            .filter(|&i| masses[i] > 0.0)
            .map(|i| masses[i] / total * code.codeword(i).unwrap().len() as f64)
            .sum();
        worst_gap = worst_gap.max(expected - h);
        if expected > h + 1.0 + 1e-9 {
            return verdict(
                false,
                format!("case {case}: L = {expected} > H + 1 = {}", h + 1.0),
            );
        }
    }
    verdict(
        true,
        format!("100 distributions, max L - H = {worst_gap:.4}"),
    )
}

fn omega_round_trip() -> Verdict {
    for n in 1..=1u64 << 16 {
        let word = omega_codeword(n).unwrap();
        match omega_decode(word.bits(), 0) {
            Ok((value, used)) if value == n && used == word.len() => {}
            other => return verdict(false, format!("n = {n}: decoded {other:?}")),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for round in 0..3 {
        let values: Vec<u64> = (0..10_000)
            .map(|_| {
                let bits = rng.random_range(1..=64);
                (rng.next_u64() >> (64 - bits)).max(1)
            })
            .collect();
        let mut stream: BitVec<u8, Msb0> = BitVec::new();
        for &v in &values {
            stream.extend_from_bitslice(omega_codeword(v).unwrap().bits());
        }
        if omega_decode_all(&stream).ok() != Some(values) {
            return verdict(false, format!("concatenation {round} did not round-trip"));
        }
    }
    verdict(true, "n in [1, 65536] and 3 x 10^4-codeword streams")
}

fn ratio_tracking(corpora: &mut Vec<(String, Corpus)>) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for h in [0.25, 0.5, 0.75] {
        let outcomes = trials(&domain(h, 2.0, 3), 100_000, 100);
        let ratio = mean_ratio(&outcomes);
        let ok = (h..=h + 0.10).contains(&ratio);
        pass &= ok;
        parts.push(format!(
            "H={h}: {ratio:.4}{}",
            if ok { "" } else { " (out of range)" }
        ));
        corpora.push((format!("H={h}"), build_corpus(simulated_corpus(&outcomes))));
    }
    verdict(pass, parts.join(", "))
}

fn vanishing_reuse(corpora: &mut Vec<(String, Corpus)>) -> Verdict {
    let spec = domain(1.0, 2.0, 4);
    let library = Library::build(&spec).expect("library");
    let mut reuse = Vec::new();
    let mut max_useful = Vec::new();
    let mut raw = Vec::new();
    for s in [10_000u64, 100_000, 1_000_000] {
        let outcomes = run_trials(&spec, &library, s, 30, CompressorConfig::default()).unwrap();
        reuse.push(mean_reuse_proportion(&outcomes));
        raw.push(
            outcomes
                .iter()
                .map(|o| {
                    1.0 - o.program.compressed_bits as f64 / o.program.uncompressed_bits as f64
                })
                .sum::<f64>()
                / outcomes.len() as f64,
        );
        max_useful.push(
            outcomes
                .iter()
                .map(|o| o.report.n_useful)
                .max()
                .unwrap_or(0),
        );
        corpora.push((
            format!("H=1, s={s}"),
            build_corpus(simulated_corpus(&outcomes)),
        ));
    }
    let nonincreasing = reuse.windows(2).all(|w| w[1] <= w[0]);
    let small = reuse[2] < 0.05;
    let bounded = max_useful[2] <= max_useful[0] + 2;
    verdict(
        nonincreasing && small && bounded,
        format!("reuse {reuse:?} (unclamped {raw:.4?}), max N(s) {max_useful:?}"),
    )
}

fn log_plus_oracle(n: u64) -> f64 {
    let mut total = 0.0;
    let mut x = n as f64;
    loop {
        x = x.log2();
        if x <= 0.0 {
            return total;
        }
        total += x;
    }
}

fn rate_bound(corpora: &[(String, Corpus)]) -> Verdict {
    let mut worst = 0.0f64;
    for (name, corpus) in corpora {
        let table = rank_frequency(corpus, 0).unwrap();
        let bound = check_rate_bound(&table);
        let oracle: f64 = table
            .entries()
            .iter()
            .map(|e| e.rate * log_plus_oracle(e.rank))
            .sum();
        if (bound.sum - oracle).abs() > 1e-9 || !bound.satisfied || oracle > 1.0 {
            return verdict(
                false,
                format!("{name}: sum {} (oracle {oracle})", bound.sum),
            );
        }
        worst = worst.max(oracle);
    }
    let adversarial = RankFrequencyTable::new(
        (1..=100_000u64)
            .map(|n| RankEntry {
                rank: n,
                count: 100_000 / n,
                rate: 1.0 / n as f64,
            })
            .collect(),
    )
    .unwrap();
    let flagged = !check_rate_bound(&adversarial).satisfied;
    verdict(
        flagged,
        format!(
            "{} simulated corpora, max sum {worst:.4}; 1/n flagged: {flagged}",
            corpora.len()
        ),
    )
}

fn zipf_recovery() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for a in [0.8, 1.0, 1.5, 2.0] {
        let entries: Vec<RankEntry> = (1..=1000u64)
            .map(|n| {
                let count = (1e7 * (n as f64).powf(-a)).round() as u64;
                RankEntry {
                    rank: n,
                    count,
                    rate: count as f64 / 1e9,
                }
            })
            .collect();
        let fit = fit_zipf(
            &RankFrequencyTable::new(entries).unwrap(),
            DEFAULT_MIN_COUNT,
        )
        .unwrap();
        let ok = (fit.exponent - a).abs() <= 0.05 && fit.r_squared > 0.99;
        pass &= ok;
        parts.push(format!("{a}->{:.3}", fit.exponent));
    }
    let mut worst: f64 = 0.0;
    for seed in 0..10u64 {
        let outcomes = trials(&domain(0.0, 1.0, 100 + seed), 640_000, 100);
        let corpus = build_corpus(simulated_corpus(&outcomes));
        let refs = corpus.total_refs();
        if refs < 1_000_000 {
            return verdict(false, format!("seed {seed}: only {refs} references"));
        }
        let fit = fit_zipf(&rank_frequency(&corpus, 0).unwrap(), DEFAULT_MIN_COUNT).unwrap();
        worst = worst.max((fit.exponent - 1.0).abs());
    }
    pass &= worst <= 0.15;
    verdict(
        pass,
        format!(
            "exact {}; stochastic max |a - 1| = {worst:.3}",
            parts.join(" ")
        ),
    )
}

fn incompleteness() -> Verdict {
    let prefixes = [1, 4, 16, 64, 256];
    let curve = incompleteness_curve(
        &domain(0.5, 2.0, 7),
        &prefixes,
        100_000,
        100,
        CompressorConfig::default(),
    )
    .unwrap();
    let ratios: Vec<f64> = curve.iter().map(|p| p.1).collect();
    let nonincreasing = ratios.windows(2).all(|w| w[1] <= w[0] + 0.01);
    let above = ratios.iter().all(|&r| r > 0.5);
    let shown: Vec<String> = curve.iter().map(|(k, r)| format!("{k}:{r:.4}")).collect();
    verdict(nonincreasing && above, shown.join(" "))
}

fn heaps() -> Verdict {
    let mut alphas = Vec::new();
    for seed in 0..10u64 {
        let objects = support::zipf_objects(seed, 1 << 12, 1.0, 300, |i| 20 + (i * 37) % 400);
        let fit = fit_heaps(&build_corpus(objects), seed).unwrap();
        alphas.push(fit.fit.exponent);
    }
    let pass = alphas.iter().all(|&a| a > 0.0 && a < 1.0);
    let lo = alphas.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = alphas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    verdict(pass, format!("alpha in [{lo:.3}, {hi:.3}] over 10 seeds"))
}

fn erdos_kac() -> Verdict {
    let options = ErdosKacOptions::default();
    let mut passes = 0;
    let mut p_values = Vec::new();
    for seed in 0..10u64 {
        let objects = support::zipf_objects(1000 + seed, 1 << 12, 1.0, 200, |_| 200);
        let report = erdos_kac_check(&build_corpus(objects), &options).unwrap();
        passes += usize::from(report.pass);
        p_values.push(format!("{:.3}", report.p_value.unwrap_or(f64::NAN)));
    }
    let constant = build_corpus(
        (0..150)
            .map(|i| reuselaw::ingest::ObjectRecord {
                name: format!("c{i}"),
                size_bits: 4096,
                refs: BTreeMap::from([("a".to_owned(), 2), ("b".to_owned(), 1)]),
            })
            .collect(),
    );
    let degenerate = erdos_kac_check(&constant, &options).unwrap().degenerate;
    verdict(
        passes >= 9 && degenerate,
        format!(
            "{passes}/10 seeds pass (p = {}); constant degenerate: {degenerate}",
            p_values.join(" ")
        ),
    )
}

fn ingestion() -> Verdict {
    let record = scan_elf(&support::golden_path()).unwrap();
    let expected: BTreeMap<String, u64> =
        BTreeMap::from([("malloc".to_owned(), 1), ("printf".to_owned(), 3)]);
    if record.refs != expected {
        return verdict(false, format!("golden refs {:?}", record.refs));
    }

    let objects = support::zipf_objects(5, 300, 1.0, 50, |i| 10 + i);
    let corpus = build_corpus(objects.clone());
    let mut buf = Vec::new();
    write_corpus(&corpus, &mut buf).unwrap();
    let back = read_corpus(buf.as_slice()).unwrap();
    if back.objects() != corpus.objects() || back.ranked_components() != corpus.ranked_components()
    {
        return verdict(false, "corpus round-trip changed records");
    }
    let mut reversed = objects;
    reversed.reverse();
    if build_corpus(reversed).objects() != corpus.objects() {
        return verdict(false, "record order changed the corpus");
    }

    let tmp = TempDir::new().unwrap();
    let root = tmp.path().join("lib");
    std::fs::create_dir(&root).unwrap();
    let golden = std::fs::read(support::golden_path()).unwrap();
    for name in ["c.so", "a.so", "b.so"] {
        std::fs::write(root.join(name), &golden).unwrap();
    }
    let scan = |out: &str| {
        let options = ScanOptions {
            roots: vec![root.clone()],
            out_dir: tmp.path().join(out),
            text_extensions: vec!["refs".into()],
            strict: true,
        };
        let summary = cmd_scan(&options).unwrap();
        std::fs::read(summary.corpus_path).unwrap()
    };
    let first = scan("one");
    let second = scan("two");
    let scanned = load_corpus(&tmp.path().join("one/corpus.jsonl")).unwrap();
    let ok = first == second && scanned.ranked_components()[0] == ("printf".to_owned(), 9);
    verdict(
        ok,
        "golden {printf: 3, malloc: 1}; round-trip and scan order independent",
    )
}

fn incompressibility() -> Verdict {
    let mut random = vec![0u8; 1 << 20];
    ChaCha8Rng::seed_from_u64(11).fill_bytes(&mut random);
    let r = incompressibility_probe(&random).unwrap().ratio;
    let z = incompressibility_probe(&vec![0u8; 1 << 20]).unwrap().ratio;
    verdict(
        r >= 0.99 && z < 0.01,
        format!("random {r:.5}, zeros {z:.5}"),
    )
}

fn pipeline(dir: &Path, config: &Path) -> Vec<(String, Vec<u8>)> {
    let sim = dir.join("sim");
    let ana = dir.join("ana");
    let rep = dir.join("rep");
    cmd_simulate(config, &sim).unwrap();
    cmd_analyze(&AnalyzeOptions::new(sim.join("corpus.jsonl"), &ana)).unwrap();
    let summary = cmd_report(&ana.join("report.json"), &rep).unwrap();
    let mut files: Vec<(String, Vec<u8>)> = summary
        .written
        .iter()
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Verdict {
    let tmp = TempDir::new().unwrap();
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/example.toml");
    let a = pipeline(&tmp.path().join("a"), &config);
    let b = pipeline(&tmp.path().join("b"), &config);
    let svg = a.iter().filter(|f| f.0.ends_with(".svg")).count();
    let csv = a.iter().filter(|f| f.0.ends_with(".csv")).count();
    verdict(
        a == b && svg == 3 && csv == 3,
        format!("{svg} SVG + {csv} CSV byte-identical: {}", a == b),
    )
}

fn main() {
    let mut corpora = Vec::new();
    type Criterion<'a> = (u32, &'a str, u64, Box<dyn FnOnce() -> Verdict + 'a>);
    let corpora_ref = std::cell::RefCell::new(&mut corpora);
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "Shannon-Fano length and Kraft",
            10,
            Box::new(coding_suite),
        ),
        (2, "Elias-omega round-trip", 10, Box::new(omega_round_trip)),
        (
            3,
            "compression ratio tracks H",
            120,
            Box::new(|| ratio_tracking(&mut corpora_ref.borrow_mut())),
        ),
        (
            4,
            "uniform domain reuse vanishes",
            180,
            Box::new(|| vanishing_reuse(&mut corpora_ref.borrow_mut())),
        ),
        (
            5,
            "rate bound",
            5,
            Box::new(|| rate_bound(&corpora_ref.borrow())),
        ),
        (6, "Zipf exponent recovery", 60, Box::new(zipf_recovery)),
        (7, "incompleteness curve", 120, Box::new(incompleteness)),
        (8, "Heaps exponent in (0, 1)", 60, Box::new(heaps)),
        (9, "Erdos-Kac normality", 60, Box::new(erdos_kac)),
        (10, "ingestion golden files", 5, Box::new(ingestion)),
        (
            11,
            "incompressibility probe",
            5,
            Box::new(incompressibility),
        ),
        (12, "end-to-end determinism", 120, Box::new(determinism)),
    ];

    let mut failed = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget);
        let pass = v.pass && in_budget;
        println!(
            "{} criterion {id:2} {name}: {} [{:.2}s / {budget}s{}]",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64(),
            if in_budget { "" } else { ", over budget" }
        );
        if !pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
