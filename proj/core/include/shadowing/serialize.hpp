#pragma once

#include <memory>
#include <string>

#include "shadowing/hyperbolic.hpp"
#include "shadowing/system.hpp"

namespace shadowing {

// A loaded system: exactly one of the two pointers is set. Families:
//   {"family":"circle-linear","degree":d}
//   {"family":"circle-perturbed","degree":d,"eps":e}
//   {"family":"polynomial","c":[re,im],"R":r} (optional "inner", "grid")
//   {"family":"graph","vertices":n,"edges":[[tail,head],..]}
//   {"family":"henon","c":[re,im],"b":[re,im],"Rx":,"Ry":} (optional "rx")
struct system_handle {
    std::shared_ptr<const mv_system> expanding;
    std::shared_ptr<const crossed_system> crossed;
};

std::string system_to_json(const system_handle& sys);
system_handle system_from_json_text(const std::string& text);

// Orbits: {"window":{"lo":,"hi":,"bi":},"points":[[re_x,im_x,re_y,im_y],..]}
std::string orbit_to_json(const orbit_seg& o);
orbit_seg orbit_from_json_text(const std::string& text);

// Pseudo-orbits carry their path space:
// {"window":..,"C":..,"space":{..},"points":[..],"paths":[[[..],..],..]}
std::string hpo_to_json(const homotopy_pseudo_orbit& h);
homotopy_pseudo_orbit hpo_from_json_text(const std::string& text);

// CSV: orbit rows "index,re_x,im_x,re_y,im_y"; trace rows
// "stage,max_length,max_defect". 15 significant digits.
std::string orbit_to_csv(const orbit_seg& o);
orbit_seg orbit_from_csv_text(const std::string& text);
std::string trace_to_csv(const shadow_trace& t);

std::string read_text_file(const std::string& file_path);
void write_text_file(const std::string& file_path, const std::string& content);

} // namespace shadowing
