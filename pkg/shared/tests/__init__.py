# Shared app tests organized into modules
