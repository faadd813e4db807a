# This can be empty 