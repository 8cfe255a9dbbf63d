#include "vaxwatch/credibility/suffix_table.hpp"

namespace vaxwatch::credibility {

namespace {

// Trimmed snapshot of the public suffix list covering the TLDs and private
// registries this pipeline encounters. Replaceable at runtime via
// SuffixTable::load_file for deployments needing the full list.
constexpr const char* kBundledSuffixRules = R"(// ===BEGIN ICANN DOMAINS===
// Country-code and generic TLDs
at
au
com.au
net.au
org.au
be
ch
co
com.co
net.co
de
es
com.es
org.es
eu
fr
gl
ie
io
it
gov.it
edu.it
ly
com.ly
me
net
nl
org
pl
com.pl
pt
uk
ac.uk
co.uk
gov.uk
org.uk
us
va
com
edu
gov
info
org
biz
tv
// Wildcard and exception rule examples (real entries from the list)
*.ck
!www.ck
// ===END ICANN DOMAINS===
// ===BEGIN PRIVATE DOMAINS===
blogspot.com
github.io
wordpress.com
altervista.org
// ===END PRIVATE DOMAINS===
)";

}  // namespace

const SuffixTable& SuffixTable::bundled() {
    static const SuffixTable table = SuffixTable::parse_text(kBundledSuffixRules);
    return table;
}

}  // namespace vaxwatch::credibility
