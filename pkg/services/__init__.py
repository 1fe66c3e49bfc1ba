"""Services: serialization, instance generation, property verification and run history."""
