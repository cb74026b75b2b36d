//! Writes small ELF64 little-endian shared objects with chosen dynamic
//! relocations. Only section headers are emitted; there are no segments.

pub const R_X86_64_GLOB_DAT: u32 = 6;
pub const R_X86_64_JUMP_SLOT: u32 = 7;
pub const R_X86_64_RELATIVE: u32 = 8;
pub const EM_X86_64: u16 = 62;

pub struct ElfSpec<'a> {
    pub machine: u16,
    /// Dynamic symbols after the null entry; index `i` here is symbol `i + 1`.
    pub symbols: &'a [&'a str],
    /// `(symbol index, relocation type)` in `.rela.plt`.
    pub plt: &'a [(u64, u32)],
    /// `(symbol index, relocation type)` in `.rela.dyn`.
    pub dynamic: &'a [(u64, u32)],
}

fn pad8(buf: &mut Vec<u8>) {
    while !buf.len().is_multiple_of(8) {
        buf.push(0);
    }
}

struct Header {
    name: u32,
    kind: u32,
    flags: u64,
    offset: u64,
    size: u64,
    link: u32,
    info: u32,
    align: u64,
    entsize: u64,
}

pub fn write_elf(spec: &ElfSpec<'_>) -> Vec<u8> {
    let mut out = vec![0u8; 64];

    let dynstr_off = out.len() as u64;
    let mut name_offsets = Vec::new();
    out.push(0);
    for name in spec.symbols {
        name_offsets.push(out.len() as u64 - dynstr_off);
        out.extend_from_slice(name.as_bytes());
        out.push(0);
    }
    let dynstr_size = out.len() as u64 - dynstr_off;
    pad8(&mut out);

    let dynsym_off = out.len() as u64;
    out.extend_from_slice(&[0u8; 24]);
    for offset in &name_offsets {
        out.extend_from_slice(&(*offset as u32).to_le_bytes());
        out.push(0x12);
        out.push(0);
        out.extend_from_slice(&0u16.to_le_bytes());
        out.extend_from_slice(&0u64.to_le_bytes());
        out.extend_from_slice(&0u64.to_le_bytes());
    }
    let dynsym_size = out.len() as u64 - dynsym_off;

    let mut relocations = |entries: &[(u64, u32)], base: u64| -> (u64, u64) {
        let start = out.len() as u64;
        for (i, &(symbol, kind)) in entries.iter().enumerate() {
            out.extend_from_slice(&(base + 8 * i as u64).to_le_bytes());
            out.extend_from_slice(&((symbol << 32) | u64::from(kind)).to_le_bytes());
            out.extend_from_slice(&0i64.to_le_bytes());
        }
        (start, out.len() as u64 - start)
    };
    let (plt_off, plt_size) = relocations(spec.plt, 0x3000);
    let (dyn_off, dyn_size) = relocations(spec.dynamic, 0x4000);

    let shstrtab_off = out.len() as u64;
    let mut section_names = Vec::new();
    out.push(0);
    for name in [".dynstr", ".dynsym", ".rela.plt", ".rela.dyn", ".shstrtab"] {
        section_names.push((out.len() as u64 - shstrtab_off) as u32);
        out.extend_from_slice(name.as_bytes());
        out.push(0);
    }
    let shstrtab_size = out.len() as u64 - shstrtab_off;
    pad8(&mut out);

    let headers = [
        Header {
            name: 0,
            kind: 0,
            flags: 0,
            offset: 0,
            size: 0,
            link: 0,
            info: 0,
            align: 0,
            entsize: 0,
        },
        Header {
            name: section_names[0],
            kind: 3,
            flags: 2,
            offset: dynstr_off,
            size: dynstr_size,
            link: 0,
            info: 0,
            align: 1,
            entsize: 0,
        },
        Header {
            name: section_names[1],
            kind: 11,
            flags: 2,
            offset: dynsym_off,
            size: dynsym_size,
            link: 1,
            info: 1,
            align: 8,
            entsize: 24,
        },
        Header {
            name: section_names[2],
            kind: 4,
            flags: 2,
            offset: plt_off,
            size: plt_size,
            link: 2,
            info: 0,
            align: 8,
            entsize: 24,
        },
        Header {
            name: section_names[3],
            kind: 4,
            flags: 2,
            offset: dyn_off,
            size: dyn_size,
            link: 2,
            info: 0,
            align: 8,
            entsize: 24,
        },
        Header {
            name: section_names[4],
            kind: 3,
            flags: 0,
            offset: shstrtab_off,
            size: shstrtab_size,
            link: 0,
            info: 0,
            align: 1,
            entsize: 0,
        },
    ];
    let shoff = out.len() as u64;
    for h in &headers {
        out.extend_from_slice(&h.name.to_le_bytes());
        out.extend_from_slice(&h.kind.to_le_bytes());
        out.extend_from_slice(&h.flags.to_le_bytes());
        out.extend_from_slice(&0u64.to_le_bytes());
        out.extend_from_slice(&h.offset.to_le_bytes());
        out.extend_from_slice(&h.size.to_le_bytes());
        out.extend_from_slice(&h.link.to_le_bytes());
        out.extend_from_slice(&h.info.to_le_bytes());
        out.extend_from_slice(&h.align.to_le_bytes());
        out.extend_from_slice(&h.entsize.to_le_bytes());
    }

    let ehdr = &mut out[..64];
    ehdr[..4].copy_from_slice(b"\x7fELF");
    ehdr[4] = 2;
    ehdr[5] = 1;
    ehdr[6] = 1;
    ehdr[16..18].copy_from_slice(&3u16.to_le_bytes());
    ehdr[18..20].copy_from_slice(&spec.machine.to_le_bytes());
    ehdr[20..24].copy_from_slice(&1u32.to_le_bytes());
    ehdr[0x28..0x30].copy_from_slice(&shoff.to_le_bytes());
    ehdr[0x34..0x36].copy_from_slice(&64u16.to_le_bytes());
    ehdr[0x3a..0x3c].copy_from_slice(&64u16.to_le_bytes());
    ehdr[0x3c..0x3e].copy_from_slice(&(headers.len() as u16).to_le_bytes());
    ehdr[0x3e..0x40].copy_from_slice(&5u16.to_le_bytes());
    out
}

/// Three PLT calls to `printf`, one to `malloc`, and a relative
/// relocation that must not be counted.
pub fn golden_reloc_so() -> Vec<u8> {
    write_elf(&ElfSpec {
        machine: EM_X86_64,
        symbols: &["printf", "malloc"],
        plt: &[
            (1, R_X86_64_JUMP_SLOT),
            (1, R_X86_64_JUMP_SLOT),
            (2, R_X86_64_JUMP_SLOT),
            (1, R_X86_64_JUMP_SLOT),
        ],
        dynamic: &[(0, R_X86_64_RELATIVE)],
    })
}
