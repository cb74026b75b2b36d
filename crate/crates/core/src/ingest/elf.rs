use std::collections::BTreeMap;
use std::path::Path;

use super::{IngestError, ObjectRecord};

const ELF_MAGIC: [u8; 4] = [0x7f, b'E', b'L', b'F'];
const ELFCLASS64: u8 = 2;
const ELFDATA2LSB: u8 = 1;
const EHDR_SIZE: usize = 64;
const SHDR_SIZE: usize = 64;

const SHT_RELA: u32 = 4;
const SHT_REL: u32 = 9;
const SHT_DYNSYM: u32 = 11;

const SYM_SIZE: u64 = 24;
const RELA_SIZE: u64 = 24;
const REL_SIZE: u64 = 16;

const EM_PPC64: u16 = 21;
const EM_S390: u16 = 22;
const EM_X86_64: u16 = 62;
const EM_AARCH64: u16 = 183;
const EM_RISCV: u16 = 243;
const EM_LOONGARCH: u16 = 258;

/// `(GLOB_DAT, JUMP_SLOT)` relocation types for a machine; `None` where
/// the architecture has no such type.
fn import_relocation_types(machine: u16) -> Option<(Option<u32>, u32)> {
    match machine {
        EM_X86_64 => Some((Some(6), 7)),
        EM_AARCH64 => Some((Some(1025), 1026)),
        EM_PPC64 => Some((Some(20), 21)),
        EM_S390 => Some((Some(10), 11)),
        EM_RISCV => Some((None, 5)),
        EM_LOONGARCH => Some((None, 5)),
        _ => None,
    }
}

pub fn is_elf(bytes: &[u8]) -> bool {
    bytes.starts_with(&ELF_MAGIC)
}

struct Bytes<'a>(&'a [u8]);

impl Bytes<'_> {
    fn slice(&self, offset: u64, len: u64, what: &str) -> Result<&[u8], IngestError> {
        let end = offset
            .checked_add(len)
            .ok_or_else(|| IngestError::elf(offset, format!("{what} offset overflows")))?;
        if end > self.0.len() as u64 {
            return Err(IngestError::elf(
                offset,
                format!("{what} extends past end of file ({} bytes)", self.0.len()),
            ));
        }
        Ok(&self.0[offset as usize..end as usize])
    }

    fn u16(&self, offset: u64) -> Result<u16, IngestError> {
        let b = self.slice(offset, 2, "field")?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&self, offset: u64) -> Result<u32, IngestError> {
        let b = self.slice(offset, 4, "field")?;
        Ok(u32::from_le_bytes(b.try_into().expect("4 bytes")))
    }

    fn u64(&self, offset: u64) -> Result<u64, IngestError> {
        let b = self.slice(offset, 8, "field")?;
        Ok(u64::from_le_bytes(b.try_into().expect("8 bytes")))
    }

    fn cstr(&self, offset: u64, limit: u64) -> Result<&str, IngestError> {
        let region = self.slice(offset, limit.saturating_sub(offset), "string table")?;
        let end = region
            .iter()
            .position(|&b| b == 0)
            .ok_or_else(|| IngestError::elf(offset, "unterminated symbol name"))?;
        std::str::from_utf8(&region[..end])
            .map_err(|_| IngestError::elf(offset, "symbol name is not UTF-8"))
    }
}

#[derive(Debug, Clone, Copy)]
struct Section {
    header_offset: u64,
    kind: u32,
    offset: u64,
    size: u64,
    link: u32,
    entsize: u64,
}

fn read_sections(file: &Bytes<'_>) -> Result<(u16, Vec<Section>), IngestError> {
    let ident = file.slice(0, EHDR_SIZE as u64, "ELF header")?;
    if ident[..4] != ELF_MAGIC {
        return Err(IngestError::elf(0, "missing ELF magic"));
    }
    if ident[4] != ELFCLASS64 {
        return Err(IngestError::elf(
            4,
            format!("unsupported ELF class {}", ident[4]),
        ));
    }
    if ident[5] != ELFDATA2LSB {
        return Err(IngestError::elf(
            5,
            format!("unsupported data encoding {}", ident[5]),
        ));
    }
    let machine = file.u16(18)?;
    let shoff = file.u64(0x28)?;
    let shentsize = u64::from(file.u16(0x3a)?);
    let mut shnum = u64::from(file.u16(0x3c)?);
    if shoff == 0 {
        return Ok((machine, Vec::new()));
    }
    if shentsize != SHDR_SIZE as u64 {
        return Err(IngestError::elf(
            0x3a,
            format!("unexpected section header size {shentsize}"),
        ));
    }
    if shnum == 0 {
        // Extended numbering keeps the count in the first header's sh_size.
        shnum = file.u64(shoff + 32)?;
    }
    file.slice(
        shoff,
        shnum.saturating_mul(SHDR_SIZE as u64),
        "section header table",
    )?;
    let mut sections = Vec::with_capacity(shnum as usize);
    for i in 0..shnum {
        let base = shoff + i * SHDR_SIZE as u64;
        sections.push(Section {
            header_offset: base,
            kind: file.u32(base + 4)?,
            offset: file.u64(base + 24)?,
            size: file.u64(base + 32)?,
            link: file.u32(base + 40)?,
            entsize: file.u64(base + 56)?,
        });
    }
    Ok((machine, sections))
}

/// Counts imported-symbol relocations of an in-memory ELF64 image.
pub fn scan_elf_bytes(name: &str, bytes: &[u8]) -> Result<ObjectRecord, IngestError> {
    let file = Bytes(bytes);
    let (machine, sections) = read_sections(&file)?;
    let mut refs: BTreeMap<String, u64> = BTreeMap::new();

    let relocation_sections = sections.iter().filter(|s| {
        matches!(s.kind, SHT_RELA | SHT_REL)
            && sections
                .get(s.link as usize)
                .is_some_and(|l| l.kind == SHT_DYNSYM)
    });
    let mut types = None;
    for rel in relocation_sections {
        let (glob_dat, jump_slot) = match types {
            Some(t) => t,
            None => {
                let t = import_relocation_types(machine).ok_or_else(|| {
                    IngestError::elf(18, format!("unsupported machine {machine}"))
                })?;
                types = Some(t);
                t
            }
        };
        let dynsym = sections[rel.link as usize];
        let dynstr = sections.get(dynsym.link as usize).ok_or_else(|| {
            IngestError::elf(
                dynsym.header_offset + 40,
                "dynamic symbol table has no string table",
            )
        })?;
        let entry_size = if rel.kind == SHT_RELA {
            RELA_SIZE
        } else {
            REL_SIZE
        };
        if rel.entsize != 0 && rel.entsize != entry_size {
            return Err(IngestError::elf(
                rel.header_offset + 56,
                format!("unexpected relocation entry size {}", rel.entsize),
            ));
        }
        file.slice(rel.offset, rel.size, "relocation section")?;
        let str_end = dynstr
            .offset
            .checked_add(dynstr.size)
            .ok_or_else(|| IngestError::elf(dynstr.header_offset, "string table overflows"))?;
        file.slice(dynstr.offset, dynstr.size, "dynamic string table")?;

        for i in 0..rel.size / entry_size {
            let entry = rel.offset + i * entry_size;
            let info = file.u64(entry + 8)?;
            let kind = (info & 0xffff_ffff) as u32;
            if kind != jump_slot && Some(kind) != glob_dat {
                continue;
            }
            let symbol = info >> 32;
            if symbol == 0 {
                continue;
            }
            if symbol * SYM_SIZE >= dynsym.size {
                return Err(IngestError::elf(
                    entry + 8,
                    format!("relocation names symbol {symbol} outside the dynamic symbol table"),
                ));
            }
            let name_offset = file.u32(dynsym.offset + symbol * SYM_SIZE)?;
            let name = file.cstr(dynstr.offset + u64::from(name_offset), str_end)?;
            if !name.is_empty() {
                *refs.entry(name.to_owned()).or_default() += 1;
            }
        }
    }

    Ok(ObjectRecord {
        name: name.to_owned(),
        size_bits: (bytes.len() as u64 * 8).max(1),
        refs,
    })
}

/// Scans an ELF64 little-endian file.
pub fn scan_elf(path: &Path) -> Result<ObjectRecord, IngestError> {
    let bytes = std::fs::read(path).map_err(|e| IngestError::io(path, e))?;
    scan_elf_bytes(&path.to_string_lossy(), &bytes)
}
