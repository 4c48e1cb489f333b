//! System files bundled with the binary.

/// `(file name, contents)` of every bundled system file.
pub const FILES: &[(&str, &str)] = &[
    ("fredholm.msys", include_str!("../catalog/fredholm.msys")),
    ("fredholm3.msys", include_str!("../catalog/fredholm3.msys")),
    ("thue_morse.msys", include_str!("../catalog/thue_morse.msys")),
    ("fib.msys", include_str!("../catalog/fib.msys")),
    ("pole.msys", include_str!("../catalog/pole.msys")),
    ("diag22.msys", include_str!("../catalog/diag22.msys")),
    ("lift.msys", include_str!("../catalog/lift.msys")),
    ("purity.msys", include_str!("../catalog/purity.msys")),
    ("multiseq.msys", include_str!("../catalog/multiseq.msys")),
];

/// Contents of a bundled file, by file name with or without `.msys`.
pub fn get(name: &str) -> Option<&'static str> {
    let want = name.strip_suffix(".msys").unwrap_or(name);
    FILES.iter().find(|(f, _)| f.strip_suffix(".msys") == Some(want)).map(|(_, c)| *c)
}
