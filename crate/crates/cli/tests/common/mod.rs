#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub const BARBELL: &str = "0 1\n1 2\n0 2\n2 3\n3 4\n4 5\n3 5\n";

pub fn write_barbell(dir: &Path) -> PathBuf {
    let path = dir.join("barbell.el");
    std::fs::write(&path, BARBELL).unwrap();
    path
}

pub fn qls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qls"))
        .args(args)
        .output()
        .expect("qls binary runs")
}

pub fn qls_with_threads(args: &[&str], threads: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qls"))
        .args(args)
        .env("QLS_THREADS", threads.to_string())
        .output()
        .expect("qls binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// CSV text with every `*wall_time*` column removed.
pub fn csv_without_wall_time(text: &str) -> String {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let keep: Vec<usize> = (0..headers.len())
        .filter(|&i| !headers[i].contains("wall_time"))
        .collect();
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(keep.iter().map(|&i| &headers[i])).unwrap();
    for record in reader.records() {
        let record = record.unwrap();
        writer.write_record(keep.iter().map(|&i| &record[i])).unwrap();
    }
    String::from_utf8(writer.into_inner().unwrap()).unwrap()
}

/// JSON value with every key containing `wall_time` dropped, at any depth.
pub fn json_without_wall_time(text: &str) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(map) => {
                map.retain(|k, _| !k.contains("wall_time"));
                map.values_mut().for_each(strip);
            }
            Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v: Value = serde_json::from_str(text).unwrap();
    strip(&mut v);
    v
}
