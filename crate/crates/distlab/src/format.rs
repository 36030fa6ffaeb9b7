//! Binary label and table files. All integers are little-endian.
//!
//! Label file (`DLAB`): magic, version u16, scheme u8, n u64, W u32,
//! k u16, D u32, beta u16, digest u64, then `n` records of a u64 bit length
//! followed by `⌈len/8⌉` payload bytes.
//!
//! Table file (`DTAB`): magic, version u16, beta u16, W u32, field width u8,
//! then for `t = 0..=beta` a u64 count and that many u64 `inverse` words, a
//! u64 count and the u64 `expand` words, a u64 count and the i32 `sums`, and
//! finally an FNV-1a digest of everything before it.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use distlab_core::codec::{BitString, CodecError, MicroTables};
use distlab_core::digest::Fnv1a;
use distlab_core::{Label, LabelSet, SchemeId, SchemeParams};

pub const LABEL_MAGIC: &[u8; 4] = b"DLAB";
pub const TABLE_MAGIC: &[u8; 4] = b"DTAB";
pub const VERSION: u16 = 1;

/// Bytes before the first label record.
pub const HEADER_LEN: u64 = 4 + 2 + 1 + 8 + 4 + 2 + 4 + 2 + 8;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("bad magic: expected {expected:?}")]
    Magic { expected: &'static str },
    #[error("unsupported version {0}")]
    Version(u16),
    #[error("unknown scheme id {0}")]
    Scheme(u8),
    #[error("file is truncated")]
    Truncated,
    #[error("trailing bytes after the last record")]
    Trailing,
    #[error("node {node} outside 0..{n}")]
    NodeRange { node: u64, n: u64 },
    #[error("corrupt table file: {0}")]
    Tables(&'static str),
    #[error("label payload: {0}")]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Io(io::Error),
}

impl From<io::Error> for FormatError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            FormatError::Truncated
        } else {
            FormatError::Io(e)
        }
    }
}

/// Everything in a label file except the records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelHeader {
    pub scheme: SchemeId,
    pub n: u64,
    pub w: u32,
    pub params: SchemeParams,
    pub digest: u64,
}

impl LabelHeader {
    pub fn of(set: &LabelSet) -> Self {
        LabelHeader { scheme: set.scheme, n: set.n as u64, w: set.w, params: set.params, digest: set.digest }
    }
}

fn read_array<const N: usize>(r: &mut impl Read) -> io::Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b)?;
    Ok(b)
}

fn read_u16(r: &mut impl Read) -> io::Result<u16> {
    Ok(u16::from_le_bytes(read_array(r)?))
}

fn read_u32(r: &mut impl Read) -> io::Result<u32> {
    Ok(u32::from_le_bytes(read_array(r)?))
}

fn read_u64(r: &mut impl Read) -> io::Result<u64> {
    Ok(u64::from_le_bytes(read_array(r)?))
}

pub fn write_header(w: &mut impl Write, h: &LabelHeader) -> io::Result<()> {
    w.write_all(LABEL_MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&[h.scheme as u8])?;
    w.write_all(&h.n.to_le_bytes())?;
    w.write_all(&h.w.to_le_bytes())?;
    w.write_all(&h.params.k.to_le_bytes())?;
    w.write_all(&h.params.d.to_le_bytes())?;
    w.write_all(&h.params.beta.to_le_bytes())?;
    w.write_all(&h.digest.to_le_bytes())
}

pub fn read_header(r: &mut impl Read) -> Result<LabelHeader, FormatError> {
    if &read_array::<4>(r)? != LABEL_MAGIC {
        return Err(FormatError::Magic { expected: "DLAB" });
    }
    let version = read_u16(r)?;
    if version != VERSION {
        return Err(FormatError::Version(version));
    }
    let id = read_array::<1>(r)?[0];
    let scheme = SchemeId::from_u8(id).ok_or(FormatError::Scheme(id))?;
    let n = read_u64(r)?;
    let w = read_u32(r)?;
    let k = read_u16(r)?;
    let d = read_u32(r)?;
    let beta = read_u16(r)?;
    let digest = read_u64(r)?;
    Ok(LabelHeader { scheme, n, w, params: SchemeParams { k, d, beta }, digest })
}

fn write_record(w: &mut impl Write, bits: &BitString) -> io::Result<()> {
    w.write_all(&(bits.len() as u64).to_le_bytes())?;
    w.write_all(&bits.to_bytes())
}

fn read_record(r: &mut impl Read) -> Result<BitString, FormatError> {
    let len = read_u64(r)?;
    let nbytes = usize::try_from(len.div_ceil(8)).map_err(|_| FormatError::Truncated)?;
    let mut buf = Vec::new();
    r.take(nbytes as u64).read_to_end(&mut buf)?;
    if buf.len() != nbytes {
        return Err(FormatError::Truncated);
    }
    Ok(BitString::from_bytes(&buf, len as usize)?)
}

pub fn write_labels(w: &mut impl Write, set: &LabelSet) -> io::Result<()> {
    write_header(w, &LabelHeader::of(set))?;
    for l in &set.labels {
        write_record(w, &l.bits)?;
    }
    Ok(())
}

pub fn labels_to_bytes(set: &LabelSet) -> Vec<u8> {
    let mut out = Vec::new();
    write_labels(&mut out, set).expect("writing to memory");
    out
}

/// Reads a whole label file. Tables are not part of it; attach them with
/// [`read_tables`] for constmicro.
pub fn read_labels(r: &mut impl Read) -> Result<LabelSet, FormatError> {
    let h = read_header(r)?;
    let n = usize::try_from(h.n).map_err(|_| FormatError::Truncated)?;
    let mut labels = Vec::with_capacity(n.min(1 << 20));
    for node in 0..n {
        labels.push(Label { scheme: h.scheme, node, bits: read_record(r)? });
    }
    if r.read(&mut [0u8; 1])? != 0 {
        return Err(FormatError::Trailing);
    }
    Ok(LabelSet { scheme: h.scheme, params: h.params, n, w: h.w, digest: h.digest, labels, tables: None })
}

pub fn labels_from_bytes(bytes: &[u8]) -> Result<LabelSet, FormatError> {
    read_labels(&mut &bytes[..])
}

pub fn save_labels(path: &Path, set: &LabelSet) -> Result<(), FormatError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_labels(&mut w, set)?;
    w.flush()?;
    Ok(())
}

pub fn load_labels(path: &Path) -> Result<LabelSet, FormatError> {
    read_labels(&mut BufReader::new(File::open(path)?))
}

/// Reads the header and the records of `x` and `y` only, skipping the other
/// payloads with seeks.
pub fn read_label_pair(r: &mut (impl Read + Seek), x: u64, y: u64) -> Result<(LabelHeader, Label, Label), FormatError> {
    let h = read_header(r)?;
    for node in [x, y] {
        if node >= h.n {
            return Err(FormatError::NodeRange { node, n: h.n });
        }
    }
    let (lo, hi) = (x.min(y), x.max(y));
    let mut found = (None, None);
    let mut node = 0u64;
    while node <= hi {
        if node == lo || node == hi {
            let bits = read_record(r)?;
            if node == lo {
                found.0 = Some(bits.clone());
            }
            if node == hi {
                found.1 = Some(bits);
            }
        } else {
            let len = read_u64(r)?;
            r.seek(SeekFrom::Current(i64::try_from(len.div_ceil(8)).map_err(|_| FormatError::Truncated)?))?;
        }
        node += 1;
    }
    let (lo_bits, hi_bits) = (found.0.expect("read"), found.1.expect("read"));
    let label = |node: u64, bits: BitString| Label { scheme: h.scheme, node: node as usize, bits };
    let (lx, ly) = if x <= y { (label(x, lo_bits), label(y, hi_bits)) } else { (label(x, hi_bits), label(y, lo_bits)) };
    Ok((h, lx, ly))
}

struct HashingWriter<W> {
    inner: W,
    hash: Fnv1a,
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hash.bytes(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

struct HashingReader<R> {
    inner: R,
    hash: Fnv1a,
}

impl<R: Read> Read for HashingReader<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.hash.bytes(&buf[..n]);
        Ok(n)
    }
}

pub fn write_tables(w: &mut impl Write, t: &MicroTables) -> io::Result<()> {
    let beta = u16::try_from(t.beta).map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "beta too large"))?;
    let mut hw = HashingWriter { inner: w, hash: Fnv1a::new() };
    hw.write_all(TABLE_MAGIC)?;
    hw.write_all(&VERSION.to_le_bytes())?;
    hw.write_all(&beta.to_le_bytes())?;
    hw.write_all(&t.w.to_le_bytes())?;
    hw.write_all(&[t.fw as u8])?;
    for tab in &t.inverse {
        hw.write_all(&(tab.len() as u64).to_le_bytes())?;
        for v in tab {
            hw.write_all(&v.to_le_bytes())?;
        }
    }
    hw.write_all(&(t.expand.len() as u64).to_le_bytes())?;
    for v in &t.expand {
        hw.write_all(&v.to_le_bytes())?;
    }
    hw.write_all(&(t.sums.len() as u64).to_le_bytes())?;
    for v in &t.sums {
        hw.write_all(&v.to_le_bytes())?;
    }
    let digest = hw.hash.finish();
    hw.inner.write_all(&digest.to_le_bytes())
}

fn read_counted<R: Read, T>(
    r: &mut R,
    expected: u64,
    what: &'static str,
    mut item: impl FnMut(&mut R) -> io::Result<T>,
) -> Result<Vec<T>, FormatError> {
    let count = read_u64(r)?;
    if count != expected {
        return Err(FormatError::Tables(what));
    }
    (0..count).map(|_| item(r).map_err(FormatError::from)).collect()
}

pub fn read_tables(r: &mut impl Read) -> Result<MicroTables, FormatError> {
    let mut hr = HashingReader { inner: r, hash: Fnv1a::new() };
    if &read_array::<4>(&mut hr)? != TABLE_MAGIC {
        return Err(FormatError::Magic { expected: "DTAB" });
    }
    let version = read_u16(&mut hr)?;
    if version != VERSION {
        return Err(FormatError::Version(version));
    }
    let beta = usize::from(read_u16(&mut hr)?);
    let w = read_u32(&mut hr)?;
    let fw = u32::from(read_array::<1>(&mut hr)?[0]);
    let sigma = 2 * u64::from(w) + 1;
    if w == 0 || fw == 0 || fw > 32 || (beta as u64) * u64::from(fw) > 40 {
        return Err(FormatError::Tables("parameters out of range"));
    }
    let mut inverse = Vec::with_capacity(beta + 1);
    let mut count = 1u64;
    for _ in 0..=beta {
        inverse.push(read_counted(&mut hr, count, "inverse table size", read_u64)?);
        count = count.checked_mul(sigma).ok_or(FormatError::Tables("parameters out of range"))?;
    }
    let expand = read_counted(&mut hr, 1 << beta, "expand table size", read_u64)?;
    let sums =
        read_counted(&mut hr, 1 << (beta as u32 * fw), "sum table size", |r| Ok(i32::from_le_bytes(read_array(r)?)))?;
    let digest = hr.hash.finish();
    if read_u64(&mut hr.inner)? != digest {
        return Err(FormatError::Tables("checksum mismatch"));
    }
    if hr.inner.read(&mut [0u8; 1])? != 0 {
        return Err(FormatError::Trailing);
    }
    Ok(MicroTables { beta, w, fw, inverse, expand, sums })
}

pub fn save_tables(path: &Path, t: &MicroTables) -> Result<(), FormatError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_tables(&mut w, t)?;
    w.flush()?;
    Ok(())
}

pub fn load_tables(path: &Path) -> Result<MicroTables, FormatError> {
    read_tables(&mut BufReader::new(File::open(path)?))
}

/// Default table path next to a label file: `<labels>.dtab`.
pub fn tables_path(labels: &Path) -> std::path::PathBuf {
    let mut p = labels.as_os_str().to_owned();
    p.push(".dtab");
    p.into()
}
