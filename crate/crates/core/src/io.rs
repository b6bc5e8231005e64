//! Surface JSON files: `{ "p": 4, "faces": 6, "adj": [[[g, b], ...], ...] }`.
//!
//! [`to_json`] writes the canonical layout (one face per line), and
//! `to_json(&from_json(s)?) == s` for any canonically formatted `s`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{Pair, TiledSurface};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    p: usize,
    faces: usize,
    adj: Vec<Vec<Pair>>,
}

/// Parses and validates a surface.
pub fn from_json(text: &str) -> Result<TiledSurface> {
    let file: SurfaceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.faces != file.adj.len() {
        return Err(Error::MalformedSurface(format!(
            "`faces` is {} but `adj` has {} rows",
            file.faces,
            file.adj.len()
        )));
    }
    Ok(TiledSurface::new(file.p, file.adj)?)
}

/// Canonical JSON text, ending with a newline.
pub fn to_json(surface: &TiledSurface) -> String {
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"p\": {},", surface.p());
    let _ = writeln!(s, "  \"faces\": {},", surface.face_count());
    s.push_str("  \"adj\": [\n");
    let rows = surface.adjacency();
    for (f, row) in rows.iter().enumerate() {
        s.push_str("    [");
        for (a, t) in row.iter().enumerate() {
            if a > 0 {
                s.push(',');
            }
            let _ = write!(s, "[{},{}]", t.face, t.slot);
        }
        s.push(']');
        if f + 1 < rows.len() {
            s.push(',');
        }
        s.push('\n');
    }
    s.push_str("  ]\n}\n");
    s
}

pub fn load(path: impl AsRef<Path>) -> Result<TiledSurface> {
    from_json(&fs::read_to_string(path)?)
}

pub fn save(surface: &TiledSurface, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(surface))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::surface::ValidationError;

    #[test]
    fn cube_round_trip() {
        let cube = catalog::platonic_solid("cube").unwrap();
        let text = to_json(&cube);
        assert!(text.starts_with("{\n  \"p\": 4,\n  \"faces\": 6,\n"));
        assert!(text.contains("    [[2,1],[1,0],[3,0],[4,1]],\n"));
        let back = from_json(&text).unwrap();
        assert_eq!(back, cube);
        assert_eq!(to_json(&back), text);
        assert_eq!(back.schlafli().unwrap().q, 3);
    }

    #[test]
    fn compact_input_is_accepted() {
        let s = from_json(r#"{"p":4,"faces":1,"adj":[[[0,2],[0,3],[0,0],[0,1]]]}"#).unwrap();
        assert_eq!(s, catalog::pi_p(4).unwrap());
    }

    #[test]
    fn truncated_file_is_a_parse_error() {
        let text = to_json(&catalog::platonic_solid("cube").unwrap());
        let err = from_json(&text[..text.len() / 2]).unwrap_err();
        assert!(
            matches!(err, Error::Parse { line, .. } if line > 1),
            "{err}"
        );
    }

    #[test]
    fn involution_violation_is_named() {
        let err = from_json(r#"{"p":4,"faces":1,"adj":[[[0,2],[0,3],[0,1],[0,1]]]}"#).unwrap_err();
        match err {
            Error::Validation(v) => {
                assert_eq!(v.invariant(), "involution");
                assert!(matches!(
                    v,
                    ValidationError::NotInvolution {
                        face: 0,
                        slot: 0,
                        ..
                    }
                ));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn face_count_must_match() {
        let err = from_json(r#"{"p":4,"faces":2,"adj":[[[0,2],[0,3],[0,0],[0,1]]]}"#).unwrap_err();
        assert!(matches!(err, Error::MalformedSurface(_)));
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bolza.json");
        save(&catalog::bolza(), &path).unwrap();
        assert_eq!(load(&path).unwrap(), catalog::bolza());
        assert!(matches!(
            load(dir.path().join("missing.json")),
            Err(Error::Io(_))
        ));
    }
}
