//! Count imported-symbol relocations in ELF files under a directory.
//!
//! `cargo run --example scan_binaries -- /usr/lib/x86_64-linux-gnu`

use std::path::PathBuf;

use reuselaw::ingest::{build_corpus, is_elf, scan_elf};

fn main() {
    let root = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "/usr/bin".into()));
    let mut records = Vec::new();
    let mut skipped = 0;
    for entry in std::fs::read_dir(&root)
        .expect("readable directory")
        .flatten()
    {
        let path = entry.path();
        let Ok(bytes) = std::fs::read(&path) else {
            continue;
        };
        if !is_elf(&bytes) {
            continue;
        }
        match scan_elf(&path) {
            Ok(record) => records.push(record),
            Err(_) => skipped += 1,
        }
    }
    let corpus = build_corpus(records);
    println!(
        "{}: {} objects ({} skipped), {} distinct symbols, {} references",
        root.display(),
        corpus.len(),
        skipped,
        corpus.component_count(),
        corpus.total_refs()
    );
    for (rank, (symbol, count)) in corpus.ranked_components().iter().take(15).enumerate() {
        println!("{:>4}  {count:>6}  {symbol}", rank + 1);
    }
}
