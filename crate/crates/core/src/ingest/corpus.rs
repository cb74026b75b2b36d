use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{IngestError, ObjectRecord};

/// Scanned objects plus the ranked component universe.
///
/// Objects are kept sorted, so a corpus does not depend on the order in
/// which files were visited. Components are ranked by total reference count
/// (descending), ties broken by symbol name (ascending).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    objects: Vec<ObjectRecord>,
    ranked: Vec<(String, u64)>,
    component_index: BTreeMap<String, usize>,
}

pub fn build_corpus(mut records: Vec<ObjectRecord>) -> Corpus {
    records.sort();
    let mut totals: BTreeMap<&str, u64> = BTreeMap::new();
    for record in &records {
        for (symbol, &count) in &record.refs {
            *totals.entry(symbol.as_str()).or_default() += count;
        }
    }
    let mut ranked: Vec<(String, u64)> = totals
        .into_iter()
        .map(|(symbol, count)| (symbol.to_owned(), count))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let component_index = ranked
        .iter()
        .enumerate()
        .map(|(i, (symbol, _))| (symbol.clone(), i + 1))
        .collect();
    Corpus {
        objects: records,
        ranked,
        component_index,
    }
}

impl Corpus {
    pub fn objects(&self) -> &[ObjectRecord] {
        &self.objects
    }

    /// `(symbol, total count)` in rank order; rank is index + 1.
    pub fn ranked_components(&self) -> &[(String, u64)] {
        &self.ranked
    }

    pub fn component_index(&self) -> &BTreeMap<String, usize> {
        &self.component_index
    }

    pub fn rank_of(&self, symbol: &str) -> Option<usize> {
        self.component_index.get(symbol).copied()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.ranked.len()
    }

    /// Total object size in bits, the denominator of reuse rates.
    pub fn total_bits(&self) -> u64 {
        self.objects.iter().map(|o| o.size_bits).sum()
    }

    pub fn total_refs(&self) -> u64 {
        self.ranked.iter().map(|(_, c)| c).sum()
    }

    pub fn into_records(self) -> Vec<ObjectRecord> {
        self.objects
    }
}

pub fn write_corpus<W: Write>(corpus: &Corpus, writer: W) -> std::io::Result<()> {
    let mut out = BufWriter::new(writer);
    for object in &corpus.objects {
        serde_json::to_writer(&mut out, object)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn save_corpus(corpus: &Corpus, path: &Path) -> Result<(), IngestError> {
    let file = std::fs::File::create(path).map_err(|e| IngestError::io(path, e))?;
    write_corpus(corpus, file).map_err(|e| IngestError::io(path, e))
}

/// Reads JSON lines; blank lines are skipped and unknown fields ignored.
pub fn read_corpus<R: Read>(reader: R) -> Result<Corpus, IngestError> {
    let mut records = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| IngestError::Corpus {
            index: records.len(),
            line: line_no,
            reason: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ObjectRecord =
            serde_json::from_str(&line).map_err(|e| IngestError::Corpus {
                index: records.len(),
                line: line_no,
                reason: e.to_string(),
            })?;
        record.validate().map_err(|reason| IngestError::Corpus {
            index: records.len(),
            line: line_no,
            reason,
        })?;
        records.push(record);
    }
    Ok(build_corpus(records))
}

pub fn load_corpus(path: &Path) -> Result<Corpus, IngestError> {
    let file = std::fs::File::open(path).map_err(|e| IngestError::io(path, e))?;
    read_corpus(file)
}
