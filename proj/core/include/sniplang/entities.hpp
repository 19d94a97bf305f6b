#pragma once

#include <string>
#include <string_view>

namespace sniplang {

/// Decodes XML/HTML character references: the five named entities
/// (&amp; &lt; &gt; &quot; &apos;) plus decimal and hex numeric references,
/// emitted as UTF-8. Unknown or malformed references are kept verbatim.
std::string decode_entities(std::string_view text);

}  // namespace sniplang
