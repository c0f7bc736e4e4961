//! Cohn's matrix: factored in SL_3(Z[x]) after padding with a 1, refused in
//! SL_2. The certificate is written out and checked again from the file.

use chevalley::cli::{cohn_matrix, verify_certificate};
use chevalley::factorize::{factor_polynomial, Budget};
use chevalley::io::{read_json, write_json, CertificateFile};
use chevalley::rootdata::{GroupModel, RootKind};

fn main() {
    let g = cohn_matrix(3);
    println!("g =\n{g}");
    let cert = factor_polynomial(GroupModel::new(RootKind::A, 2), &g, &Budget::default()).unwrap();
    println!("{} letters, {} ms", cert.word_length(), cert.wall_time_ms);
    for (r, t) in cert.word.letters() {
        println!("  x_{}({t})", cert.word.rs().format_root(*r));
    }

    let path = std::env::temp_dir().join("cohn3-certificate.json");
    write_json(&path, &CertificateFile::from_certificate(&cert, false)).unwrap();
    let back: CertificateFile = read_json(&path).unwrap();
    println!("replayed from {}: {}", path.display(), verify_certificate(&back).unwrap());

    match factor_polynomial(GroupModel::new(RootKind::A, 1), &cohn_matrix(2), &Budget::default()) {
        Ok(_) => println!("SL_2: unexpectedly factored"),
        Err(e) => println!("SL_2: {e}"),
    }
}
