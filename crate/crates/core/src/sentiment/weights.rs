//! Named-tensor weight files.
//!
//! Layout (all integers little-endian): `b"MLSW"`, `u32` version, `u32`
//! tensor count, then per tensor a `u16` name length, the UTF-8 name, a `u8`
//! rank, `rank` × `u32` dims, and the row-major `f32` data.

use std::collections::HashMap;
use std::io::{self, Read, Write};

use super::{LstmModel, ModelConfig, SentimentError};

const MAGIC: &[u8; 4] = b"MLSW";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct NamedTensor {
    pub name: String,
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
}

pub fn write_tensors<W: Write>(mut w: W, tensors: &[(String, Vec<usize>, &[f64])]) -> Result<(), SentimentError> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(tensors.len() as u32).to_le_bytes())?;
    for (name, shape, data) in tensors {
        let name_len = u16::try_from(name.len()).map_err(|_| SentimentError::Format(format!("tensor name too long: {name}")))?;
        w.write_all(&name_len.to_le_bytes())?;
        w.write_all(name.as_bytes())?;
        w.write_all(&[shape.len() as u8])?;
        for &d in shape {
            w.write_all(&(d as u32).to_le_bytes())?;
        }
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        let mut buf = Vec::with_capacity(4 * data.len());
        for &v in data.iter() {
            buf.extend_from_slice(&(v as f32).to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<(), SentimentError> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => SentimentError::Format("unexpected end of tensor data".into()),
        _ => SentimentError::Io(e),
    })
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, SentimentError> {
    let mut b = [0; 4];
    read_exact(r, &mut b)?;
    Ok(u32::from_le_bytes(b))
}

pub fn read_tensors<R: Read>(mut r: R) -> Result<Vec<NamedTensor>, SentimentError> {
    let mut magic = [0; 4];
    read_exact(&mut r, &mut magic)?;
    if &magic != MAGIC {
        return Err(SentimentError::Format("bad magic: not an MLSW weight file".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(SentimentError::Format(format!("unsupported version {version} (expected {VERSION})")));
    }
    let count = read_u32(&mut r)?;
    let mut tensors = Vec::with_capacity(count.min(1024) as usize);
    for _ in 0..count {
        let mut b2 = [0; 2];
        read_exact(&mut r, &mut b2)?;
        let mut name = vec![0; u16::from_le_bytes(b2) as usize];
        read_exact(&mut r, &mut name)?;
        let name = String::from_utf8(name).map_err(|_| SentimentError::Format("tensor name is not UTF-8".into()))?;
        let mut rank = [0; 1];
        read_exact(&mut r, &mut rank)?;
        let shape = (0..rank[0]).map(|_| read_u32(&mut r).map(|d| d as usize)).collect::<Result<Vec<_>, _>>()?;
        let len: usize = shape.iter().product();
        // read in bounded chunks so a corrupt header cannot trigger a huge allocation
        let mut data = Vec::new();
        let mut remaining = len;
        let mut buf = vec![0u8; 4 * len.min(1 << 16)];
        while remaining > 0 {
            let n = remaining.min(1 << 16);
            read_exact(&mut r, &mut buf[..4 * n])?;
            data.extend(buf[..4 * n].chunks_exact(4).map(|c| f64::from(f32::from_le_bytes([c[0], c[1], c[2], c[3]]))));
            remaining -= n;
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(SentimentError::Format(format!("tensor {name} contains non-finite values")));
        }
        tensors.push(NamedTensor { name, shape, data });
    }
    let mut rest = [0; 1];
    if r.read(&mut rest)? != 0 {
        return Err(SentimentError::Format("trailing bytes after tensor data".into()));
    }
    Ok(tensors)
}

/// Looks tensors up by name; every expected name must be present with the
/// expected shape, and nothing else may be.
pub(crate) struct TensorSet(HashMap<String, NamedTensor>);

impl TensorSet {
    pub(crate) fn new(tensors: Vec<NamedTensor>) -> Result<Self, SentimentError> {
        let mut map = HashMap::new();
        for t in tensors {
            if map.contains_key(&t.name) {
                return Err(SentimentError::Format(format!("duplicate tensor {}", t.name)));
            }
            map.insert(t.name.clone(), t);
        }
        Ok(TensorSet(map))
    }

    pub(crate) fn take(&mut self, name: &str, shape: &[usize]) -> Result<Vec<f64>, SentimentError> {
        let t = self.0.remove(name).ok_or_else(|| SentimentError::Format(format!("missing tensor {name}")))?;
        if t.shape != shape {
            return Err(SentimentError::Format(format!(
                "tensor {name} has shape {:?}, expected {:?}",
                t.shape, shape
            )));
        }
        Ok(t.data)
    }

    pub(crate) fn finish(self) -> Result<(), SentimentError> {
        let mut extra: Vec<&String> = self.0.keys().collect();
        extra.sort();
        match extra.first() {
            Some(name) => Err(SentimentError::Format(format!("unexpected tensor {name}"))),
            None => Ok(()),
        }
    }
}

impl LstmModel {
    pub fn save<W: Write>(&self, w: W) -> Result<(), SentimentError> {
        write_tensors(w, &self.tensors())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.save(&mut buf).expect("writing to memory");
        buf
    }

    /// Reads a weight file, checking every tensor against `config`.
    pub fn load<R: Read>(r: R, config: ModelConfig) -> Result<Self, SentimentError> {
        let mut set = TensorSet::new(read_tensors(r)?)?;
        let mut model = LstmModel::zeros(config)?;
        let expected: Vec<(String, Vec<usize>)> = model.tensors().into_iter().map(|(n, s, _)| (n, s)).collect();
        for ((name, shape), (_, slot)) in expected.iter().zip(model.tensors_mut()) {
            slot.copy_from_slice(&set.take(name, shape)?);
        }
        set.finish()?;
        Ok(model)
    }

    /// Reads a weight file and recovers the configuration from its shapes.
    pub fn load_inferred<R: Read>(r: R) -> Result<Self, SentimentError> {
        let mut buf = Vec::new();
        let mut r = r;
        r.read_to_end(&mut buf)?;
        let tensors = read_tensors(&buf[..])?;
        let find = |name: &str| tensors.iter().find(|t| t.name == name);
        let first = find("l0.fwd.W_ih").ok_or_else(|| SentimentError::Format("missing tensor l0.fwd.W_ih".into()))?;
        let (embed_dim, hidden_dim) = match first.shape[..] {
            [g, e] if g % 4 == 0 && g > 0 => (e, g / 4),
            _ => return Err(SentimentError::Format(format!("tensor l0.fwd.W_ih has shape {:?}", first.shape))),
        };
        let layers = (0..).take_while(|l| find(&format!("l{l}.fwd.W_ih")).is_some()).count();
        let bidirectional = find("l0.bwd.W_ih").is_some();
        Self::load(&buf[..], ModelConfig { embed_dim, hidden_dim, layers, bidirectional })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> ModelConfig {
        ModelConfig { embed_dim: 3, hidden_dim: 2, layers: 2, bidirectional: true }
    }

    fn model() -> LstmModel {
        LstmModel::init(cfg(), &mut ChaCha8Rng::seed_from_u64(3)).unwrap()
    }

    #[test]
    fn save_load_save_is_byte_identical() {
        let bytes = model().to_bytes();
        let loaded = LstmModel::load(&bytes[..], cfg()).unwrap();
        assert_eq!(loaded.to_bytes(), bytes);
        let inferred = LstmModel::load_inferred(&bytes[..]).unwrap();
        assert_eq!(inferred.config, cfg());
        assert_eq!(inferred, loaded);
    }

    #[test]
    fn header_layout() {
        let bytes = model().to_bytes();
        assert_eq!(&bytes[..4], b"MLSW");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 14);
        assert_eq!(u16::from_le_bytes(bytes[12..14].try_into().unwrap()), 11);
        assert_eq!(&bytes[14..25], b"l0.fwd.W_ih");
    }

    #[test]
    fn truncated_file() {
        let bytes = model().to_bytes();
        for cut in [2, 10, 30, bytes.len() - 1] {
            let err = LstmModel::load(&bytes[..cut], cfg()).unwrap_err();
            assert!(err.to_string().contains("unexpected end of tensor data"), "{cut}: {err}");
        }
    }

    #[test]
    fn renamed_tensor_is_missing() {
        let mut bytes = model().to_bytes();
        let pos = bytes.windows(6).position(|w| w == b"head.b").unwrap();
        bytes[pos..pos + 6].copy_from_slice(b"head.c");
        let err = LstmModel::load(&bytes[..], cfg()).unwrap_err();
        assert_eq!(err.to_string(), "weight file: missing tensor head.b");
    }

    #[test]
    fn bad_magic_and_version() {
        let mut bytes = model().to_bytes();
        bytes[0] = b'X';
        assert!(LstmModel::load(&bytes[..], cfg()).unwrap_err().to_string().contains("bad magic"));
        let mut bytes = model().to_bytes();
        bytes[4] = 2;
        assert!(LstmModel::load(&bytes[..], cfg()).unwrap_err().to_string().contains("version 2"));
    }

    #[test]
    fn shape_mismatch_names_tensor() {
        let bytes = model().to_bytes();
        let err = LstmModel::load(&bytes[..], ModelConfig { embed_dim: 4, ..cfg() }).unwrap_err();
        assert!(err.to_string().contains("l0.fwd.W_ih"), "{err}");
        let err = LstmModel::load(&bytes[..], ModelConfig { bidirectional: false, ..cfg() }).unwrap_err();
        assert!(err.to_string().contains("l1.fwd.W_ih"), "{err}");
    }

    #[test]
    fn trailing_bytes_rejected() {
        let mut bytes = model().to_bytes();
        bytes.push(0);
        assert!(LstmModel::load(&bytes[..], cfg()).is_err());
    }
}
