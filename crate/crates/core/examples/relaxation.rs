//! Relaxation structure of the Ingleton violators on eight elements.

use matroid_catalogue::canon::certificate;
use matroid_catalogue::enumerate::{enumerate, EnumOptions};
use matroid_catalogue::named::{ag32_relaxed, vamos, vamos_plus};
use matroid_catalogue::props::{ingleton_violation, relaxation_edges};
use matroid_catalogue::Matroid;
use rayon::prelude::*;

fn main() {
    let levels = enumerate(8, &EnumOptions::default()).expect("enumeration");
    let mut members: Vec<Matroid> = levels[8].par_iter().filter(|m| ingleton_violation(m).is_some()).cloned().collect();
    let ag = certificate(&ag32_relaxed()).canonical();
    println!("violators {}, AG(3,2)' among them: {}", members.len(), members.contains(&ag));
    if !members.contains(&ag) {
        members.push(ag.clone());
        members.sort();
    }
    let edges = relaxation_edges(&members);
    let name = |m: &Matroid| {
        if *m == ag {
            "AG(3,2)'".to_string()
        } else if *m == certificate(&vamos()).canonical() {
            "V8".to_string()
        } else if *m == certificate(&vamos_plus()).canonical() {
            "V8+".to_string()
        } else {
            format!("#{} bases", m.bases().len())
        }
    };
    println!("{} relaxation edges", edges.len());
    for (i, m) in members.iter().enumerate() {
        let kids: Vec<String> =
            edges.iter().filter(|e| e.0 == i).map(|e| format!("{}:{}", e.1, name(&members[e.1]))).collect();
        let parents = edges.iter().filter(|e| e.1 == i).count();
        println!("{i:>2} {:<14} parents {parents} -> {}", name(m), kids.join(" "));
    }
}
