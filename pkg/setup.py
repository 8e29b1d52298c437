from setuptools import setup, find_packages

setup(
    name="hadamard-subfactors",
    version="1.0.0",
    description="Exact and numerical analysis of twisted tensor product \
        Hadamard subfactors",
    author="A J Arun Jeya Prasad",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=["app", "cli"],
    install_requires=[
        "python-dotenv>=1.1.0",
        "numpy>=1.26.0",
        "scipy>=1.11.0",
        "sympy>=1.12",
        "networkx>=3.2",
        "pydantic>=2.5.0",
        "fastapi>=0.115.14",
        "uvicorn>=0.29.0",
        "httpx>=0.27.0",
        "pytest-asyncio>=0.21.0"
    ],
    entry_points={
        "console_scripts": [
            "hadamard-subfactors=cli:main",
        ],
    },
)
