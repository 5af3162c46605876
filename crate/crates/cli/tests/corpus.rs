//! The corpus files are the printed form of the in-code library. Run with
//! `ELX_BLESS=1` to regenerate them.

use std::path::PathBuf;

use elx_cli::corpus::standard_corpus;
use elx_cli::script::ScriptFile;
use elx_cli::session::Session;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn corpus_files_match_the_library() {
    let bless = std::env::var_os("ELX_BLESS").is_some();
    for (name, file) in standard_corpus().unwrap() {
        let path = corpus_dir().join(name);
        let text = file.print();
        if bless {
            std::fs::create_dir_all(corpus_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{name} is stale; regenerate with ELX_BLESS=1");
    }
}

#[test]
fn corpus_files_round_trip_and_check() {
    for (name, _) in standard_corpus().unwrap() {
        let text = std::fs::read_to_string(corpus_dir().join(name)).unwrap();
        let file = ScriptFile::parse(&text).unwrap_or_else(|e| panic!("{name}:{e}"));
        assert_eq!(file.print(), text, "{name}");
        assert_eq!(ScriptFile::parse(&file.print()).unwrap(), file, "{name}");
        let session = Session::check(&file).unwrap();
        for o in &session.outcomes {
            assert!(o.ok(), "{name}: {}: {}", o.item.name, o.result.as_ref().err().unwrap());
        }
    }
}
