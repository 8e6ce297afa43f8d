# Validation helpers and error types
