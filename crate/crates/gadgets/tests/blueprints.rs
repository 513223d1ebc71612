use fasncl_core::fs::verify_color_classing;
use fasncl_core::planar::is_planar_small;
use fasncl_gadgets::blueprint::transcription_table_json;
use fasncl_gadgets::{blueprint, edge_state, harness, Color, EdgeGadgetDirection, GadgetKind, PortScenario};

#[test]
fn blueprints_are_planar_with_degree_at_most_three() {
    for kind in GadgetKind::ALL {
        let bp = blueprint(kind);
        assert!(is_planar_small(&bp.locations).unwrap(), "{}", kind.name());
        for v in 0..bp.len() as u32 {
            assert!(bp.degree_with_ports(v) <= 3, "{} location {}", kind.name(), bp.names[v as usize]);
        }
        for p in &bp.ports {
            assert!(p.light.is_light());
        }
    }
}

#[test]
fn harnessed_classings_are_sound() {
    for kind in GadgetKind::ALL {
        let bp = blueprint(kind);
        let h = harness(&bp, &vec![PortScenario::Sink; bp.ports.len()]);
        assert!(verify_color_classing(&h.instance, &h.classing), "{}", kind.name());
        assert!(h.instance.locations().max_degree() <= 3);
    }
}

#[test]
fn dot_has_one_filled_node_per_location() {
    for kind in GadgetKind::ALL {
        let bp = blueprint(kind);
        let dot = bp.to_dot();
        assert_eq!(dot.matches("fillcolor").count(), bp.len(), "{}", kind.name());
        assert!(dot.starts_with("graph"));
        assert_eq!(dot.matches("shape=point").count(), bp.ports.len());
    }
}

#[test]
fn transcription_table_lists_every_blueprint() {
    let table: serde_json::Value = serde_json::from_str(&transcription_table_json()).unwrap();
    let entries = table.as_array().unwrap();
    assert_eq!(entries.len(), 4);
    for (entry, kind) in entries.iter().zip(GadgetKind::ALL) {
        let bp = blueprint(kind);
        assert_eq!(entry["locations"].as_array().unwrap().len(), bp.len());
        assert_eq!(entry["edges"].as_array().unwrap().len(), bp.locations.edge_count());
    }
}

#[test]
fn both_directions_keep_the_population() {
    for kind in [GadgetKind::BlueEdge, GadgetKind::RedEdge] {
        let a = edge_state(kind, EdgeGadgetDirection::TowardPort0).unwrap();
        let b = edge_state(kind, EdgeGadgetDirection::TowardPort1).unwrap();
        for c in Color::ALL {
            assert_eq!(a.iter().filter(|&&x| x == c).count(), b.iter().filter(|&&x| x == c).count());
        }
        assert_ne!(a, b);
    }
}
