//! Shared helpers: catalog fixtures written to a temporary directory.

#![allow(dead_code)]

use std::path::PathBuf;

use fibalg_core::dsl::CATALOG;
use tempfile::TempDir;

/// A limit diagram appended to the writer fixture.
pub const DIAGRAM: &str = "
category two {
  objects: l, r;
}

functor D : two -> writer_em {
  objects:
    l |-> 1__1__id_1;
    r |-> 0__2__id_2;
}
";

pub struct Fixtures {
    pub dir: TempDir,
}

impl Fixtures {
    pub fn new() -> Self {
        let dir = tempfile::tempdir().expect("temp dir");
        for e in CATALOG {
            std::fs::write(dir.path().join(format!("{}.fib", e.name)), e.text).expect("write fixture");
        }
        let writer = fibalg_core::dsl::entry("writer_chain3").expect("writer").text;
        std::fs::write(dir.path().join("writer_limits.fib"), format!("{writer}{DIAGRAM}")).expect("write");
        Self { dir }
    }

    pub fn path(&self, name: &str) -> String {
        let p: PathBuf = self.dir.path().join(format!("{name}.fib"));
        p.to_string_lossy().into_owned()
    }
}

pub fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(fibalg_cli::payload::SCHEMA_VERSION)
}
