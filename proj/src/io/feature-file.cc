// io/feature-file.cc

// Copyright 2026  emgse contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "io/feature-file.h"

#include <sstream>
#include <vector>

#include "base/emgse-common.h"
#include "io/binary-io.h"

namespace emgse {

void WriteFeatureText(const std::string &path, const Eigen::MatrixXd &m,
                      const std::string &comment) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  if (!comment.empty()) os << "# " << comment << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "\n";
  }
  WriteFileText(path, os.str());
}

Eigen::MatrixXd ReadFeatureText(const std::string &path) {
  std::istringstream in(ReadFileText(path));
  in.imbue(std::locale::classic());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw FormatError(path + ": unparsable value on line " +
                                     std::to_string(rows.size() + 1));
    if (!rows.empty() && row.size() != rows[0].size())
      throw FormatError(path + ": ragged rows");
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace emgse
