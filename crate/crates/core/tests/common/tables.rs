//! Reference facts about the shipped corpus, written out by hand.

use std::collections::BTreeMap;

pub const SUPPLIERS: [&str; 4] = ["Region", "ArbitrarySum", "AmountOfMatter", "PhysicalObject"];

pub fn partition_tree() -> BTreeMap<&'static str, Vec<&'static str>> {
    BTreeMap::from([
        ("Particular", vec!["Abstract", "Endurant", "Perdurant", "Quality"]),
        ("Region", vec!["AbstractRegion", "PhysicalRegion", "TemporalRegion"]),
        ("Endurant", vec!["ArbitrarySum", "NonPhysicalEndurant", "PhysicalEndurant"]),
        ("Perdurant", vec!["Event", "Stative"]),
        ("Event", vec!["Accomplishment", "Achievement"]),
        ("Stative", vec!["Process", "State"]),
        ("Quality", vec!["AbstractQuality", "PhysicalQuality", "TemporalQuality"]),
        ("PhysicalEndurant", vec!["AmountOfMatter", "Feature", "PhysicalObject"]),
        ("NonPhysicalObject", vec!["MentalObject", "SocialObject"]),
        ("SocialObject", vec!["AgentiveSocialObject", "NonAgentiveSocialObject"]),
        ("AgentiveSocialObject", vec!["SocialAgent", "Society"]),
        ("PhysicalObject", vec!["AgentivePhysicalObject", "NonAgentivePhysicalObject"]),
    ])
}

/// Written out by reading each concept block: an own NSMC or SLD makes it
/// defined.
pub const DEFINEDNESS: [(&str, bool); 38] = [
    ("Particular", false),
    ("Abstract", false),
    ("Region", false),
    ("AbstractRegion", false),
    ("PhysicalRegion", false),
    ("SpaceRegion", false),
    ("TemporalRegion", false),
    ("TimeInterval", false),
    ("Endurant", false),
    ("ArbitrarySum", false),
    ("NonPhysicalEndurant", false),
    ("NonPhysicalObject", false),
    ("MentalObject", false),
    ("SocialObject", false),
    ("AgentiveSocialObject", false),
    ("SocialAgent", false),
    ("Society", false),
    ("NonAgentiveSocialObject", false),
    ("PhysicalEndurant", false),
    ("AmountOfMatter", false),
    ("Feature", false),
    ("PhysicalObject", false),
    ("AgentivePhysicalObject", false),
    ("NonAgentivePhysicalObject", false),
    ("Perdurant", false),
    ("Event", false),
    ("Accomplishment", true),
    ("Achievement", true),
    ("Stative", false),
    ("Process", false),
    ("State", false),
    ("Quality", false),
    ("AbstractQuality", false),
    ("PhysicalQuality", true),
    ("SpatialLocation", false),
    ("TemporalQuality", true),
    ("TemporalLocation", false),
    ("Atom", true),
];
