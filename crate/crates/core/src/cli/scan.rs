use std::io::Read;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use super::{display, ensure_dir, CliError, RunManifest};
use crate::ingest::{
    build_corpus, is_elf, save_corpus, scan_elf, scan_text, IngestError, ObjectRecord,
};

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub roots: Vec<PathBuf>,
    pub out_dir: PathBuf,
    /// File extensions treated as tab-separated reference dumps.
    pub text_extensions: Vec<String>,
    /// Abort on the first file or line that fails to parse.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub corpus_path: PathBuf,
    pub objects: usize,
    pub components: usize,
    pub failures: usize,
}

enum Found {
    Elf(PathBuf),
    Text(PathBuf),
}

fn has_elf_magic(path: &Path) -> bool {
    let mut magic = [0u8; 4];
    std::fs::File::open(path)
        .and_then(|mut f| f.read_exact(&mut magic))
        .map(|_| is_elf(&magic))
        .unwrap_or(false)
}

fn discover(options: &ScanOptions) -> Result<Vec<Found>, CliError> {
    let mut found = Vec::new();
    for root in &options.roots {
        std::fs::metadata(root)
            .map_err(|e| CliError::input(format!("cannot read root {}: {e}", root.display())))?;
        for entry in WalkDir::new(root).sort_by_file_name() {
            let entry = match entry {
                Ok(entry) => entry,
                Err(e) if options.strict => {
                    return Err(CliError::input(format!(
                        "cannot walk {}: {e}",
                        root.display()
                    )))
                }
                Err(e) => {
                    log::warn!("skipping unreadable entry: {e}");
                    continue;
                }
            };
            if !entry.file_type().is_file() {
                continue;
            }
            let path = entry.into_path();
            let is_text = path
                .extension()
                .and_then(|e| e.to_str())
                .is_some_and(|ext| options.text_extensions.iter().any(|t| t == ext));
            if is_text {
                found.push(Found::Text(path));
            } else if has_elf_magic(&path) {
                found.push(Found::Elf(path));
            }
        }
    }
    Ok(found)
}

/// Walks the roots, scanning ELF files and declared text dumps, and writes
/// `corpus.jsonl` into the output directory.
pub fn cmd_scan(options: &ScanOptions) -> Result<ScanSummary, CliError> {
    if options.roots.is_empty() {
        return Err(CliError::usage("scan needs at least one root"));
    }
    let found = discover(options)?;
    let scanned: Vec<(PathBuf, Result<Vec<ObjectRecord>, IngestError>)> = found
        .into_par_iter()
        .map(|item| match item {
            Found::Elf(path) => {
                let result = scan_elf(&path).map(|r| vec![r]);
                (path, result)
            }
            Found::Text(path) => {
                let result = scan_text(&path, options.strict).map(|scan| scan.records);
                (path, result)
            }
        })
        .collect();

    let mut records = Vec::new();
    let mut failures = 0;
    let mut inputs = Vec::new();
    for (path, result) in scanned {
        match result {
            Ok(found) => {
                inputs.push(display(&path));
                records.extend(found);
            }
            Err(e) if options.strict => {
                return Err(CliError::input(format!("{}: {e}", path.display())))
            }
            Err(e) => {
                log::warn!("{}: {e}; skipped", path.display());
                failures += 1;
            }
        }
    }
    if records.is_empty() {
        log::warn!("no objects found under the given roots");
    }

    let corpus = build_corpus(records);
    ensure_dir(&options.out_dir)?;
    let corpus_path = options.out_dir.join("corpus.jsonl");
    save_corpus(&corpus, &corpus_path).map_err(|e| CliError::usage(e.to_string()))?;

    let mut manifest = RunManifest::new("scan");
    manifest.config = serde_json::json!({
        "roots": options.roots.iter().map(|r| display(r)).collect::<Vec<_>>(),
        "text_extensions": options.text_extensions,
        "strict": options.strict,
    });
    manifest.inputs = inputs;
    manifest.outputs = vec![display(&corpus_path)];
    manifest.write(&options.out_dir)?;

    Ok(ScanSummary {
        corpus_path,
        objects: corpus.len(),
        components: corpus.component_count(),
        failures,
    })
}
