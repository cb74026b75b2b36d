use std::collections::BTreeMap;
use std::path::Path;

use super::{IngestError, ObjectRecord};

/// Nominal size charged per reference when a dump gives no object size.
pub const DEFAULT_REF_SLOT_BITS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineIssue {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TextScan {
    /// One record per object name, sorted by name.
    pub records: Vec<ObjectRecord>,
    /// Malformed lines that were skipped (non-strict mode only).
    pub skipped: Vec<LineIssue>,
}

enum Line<'a> {
    Blank,
    Size {
        object: &'a str,
        bytes: u64,
    },
    Reference {
        object: &'a str,
        symbol: &'a str,
        count: u64,
    },
}

fn parse_line(raw: &str) -> Result<Line<'_>, String> {
    let line = raw.strip_suffix('\r').unwrap_or(raw);
    if line.trim().is_empty() {
        return Ok(Line::Blank);
    }
    let fields: Vec<&str> = line.split('\t').collect();
    if fields[0] == "#size" {
        if fields.len() != 3 || fields[1].is_empty() {
            return Err("size directive needs `#size<TAB>object<TAB>bytes`".into());
        }
        let bytes = fields[2]
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| format!("invalid object size {:?}", fields[2]))?;
        return Ok(Line::Size {
            object: fields[1],
            bytes,
        });
    }
    if line.starts_with('#') {
        return Ok(Line::Blank);
    }
    let (object, symbol, count) = match fields.as_slice() {
        [object, symbol] => (*object, *symbol, 1),
        [object, symbol, count] => {
            let count = count
                .parse::<u64>()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| format!("invalid count {count:?}"))?;
            (*object, *symbol, count)
        }
        [_] => return Err("missing symbol field".into()),
        _ => return Err(format!("expected 2 or 3 fields, found {}", fields.len())),
    };
    if object.is_empty() {
        return Err("empty object field".into());
    }
    if symbol.is_empty() {
        return Err("missing symbol field".into());
    }
    Ok(Line::Reference {
        object,
        symbol,
        count,
    })
}

/// Parses a tab-separated reference dump.
///
/// Each line is `object<TAB>symbol<TAB>count` or `object<TAB>symbol`
/// (count 1); counts for the same pair add up. `#size<TAB>object<TAB>bytes`
/// sets an object's file size; objects without one are sized at
/// [`DEFAULT_REF_SLOT_BITS`] per reference. Other `#` lines and blank lines
/// are ignored. In strict mode the first malformed line is an error;
/// otherwise it is recorded and skipped.
pub fn scan_text_str(content: &str, strict: bool) -> Result<TextScan, IngestError> {
    let mut refs: BTreeMap<&str, BTreeMap<String, u64>> = BTreeMap::new();
    let mut sizes: BTreeMap<&str, u64> = BTreeMap::new();
    let mut skipped = Vec::new();
    for (i, raw) in content.split('\n').enumerate() {
        let line = i + 1;
        match parse_line(raw) {
            Ok(Line::Blank) => {}
            Ok(Line::Size { object, bytes }) => {
                sizes.insert(object, bytes);
                refs.entry(object).or_default();
            }
            Ok(Line::Reference {
                object,
                symbol,
                count,
            }) => {
                *refs
                    .entry(object)
                    .or_default()
                    .entry(symbol.to_owned())
                    .or_default() += count;
            }
            Err(reason) if strict => return Err(IngestError::Text { line, reason }),
            Err(reason) => {
                log::warn!("line {line}: {reason}; skipped");
                skipped.push(LineIssue { line, reason });
            }
        }
    }
    let records = refs
        .into_iter()
        .map(|(object, refs)| {
            let size_bits = match sizes.get(object) {
                Some(&bytes) => bytes * 8,
                None => (refs.values().sum::<u64>() * DEFAULT_REF_SLOT_BITS).max(1),
            };
            ObjectRecord {
                name: object.to_owned(),
                size_bits,
                refs,
            }
        })
        .collect();
    Ok(TextScan { records, skipped })
}

pub fn scan_text(path: &Path, strict: bool) -> Result<TextScan, IngestError> {
    let content = std::fs::read_to_string(path).map_err(|e| IngestError::io(path, e))?;
    scan_text_str(&content, strict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_counts() {
        let scan = scan_text_str("a.so\tprintf\t2\na.so\tprintf\n", true).unwrap();
        assert_eq!(scan.records.len(), 1);
        let rec = &scan.records[0];
        assert_eq!(rec.name, "a.so");
        assert_eq!(rec.refs, BTreeMap::from([("printf".to_owned(), 3)]));
        assert_eq!(rec.size_bits, 3 * DEFAULT_REF_SLOT_BITS);
    }

    #[test]
    fn empty_file() {
        let scan = scan_text_str("", true).unwrap();
        assert!(scan.records.is_empty());
        assert!(scan.skipped.is_empty());
    }

    #[test]
    fn missing_symbol_strict() {
        let err = scan_text_str("a.so\tputs\na.so\n", true).unwrap_err();
        match err {
            IngestError::Text { line, reason } => {
                assert_eq!(line, 2);
                assert!(reason.contains("symbol"));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn lenient_mode_skips() {
        let scan =
            scan_text_str("a.so\tputs\nbroken\nb.so\tputs\t0\nb.so\tputs\t4\n", false).unwrap();
        assert_eq!(
            scan.skipped.iter().map(|s| s.line).collect::<Vec<_>>(),
            vec![2, 3]
        );
        assert_eq!(scan.records.len(), 2);
        assert_eq!(scan.records[1].refs["puts"], 4);
    }

    #[test]
    fn size_directive_and_comments() {
        let text = "# nm dump\n#size\tlibm.so\t1000\nlibm.so\tsin\r\nlibm.so\tcos\t2\n";
        let scan = scan_text_str(text, true).unwrap();
        assert_eq!(scan.records[0].size_bits, 8000);
        assert_eq!(scan.records[0].total_refs(), 3);
    }
}
