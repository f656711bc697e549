# Tests package for entrokit
