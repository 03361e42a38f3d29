#ifndef DCG_IO_HPP_
#define DCG_IO_HPP_

#include <string>

namespace dcg {

std::string read_file(const std::string& path);

// Write via a temp file in the same directory plus rename, so interrupted
// runs never leave partial output.
void write_file_atomic(const std::string& path, const std::string& content);

// Default output directory: $DCG_OUT_DIR if set, else ".".
std::string default_out_dir();

}  // namespace dcg

#endif  // DCG_IO_HPP_
